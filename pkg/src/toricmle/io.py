"""Model / data / scaling files.

Model file: ``{"A": [[int]], "c": [number | "p/q"], "name": str}`` where
``A`` excludes the homogenizing row. Data file: a JSON array or a
single-column CSV of nonnegative integers.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .errors import InvalidData
from .model import ToricModel, validate_model


def _scaling_entry(x):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise InvalidData(f"bad scaling entry {x!r}")
    return x


def model_from_json(obj: dict) -> ToricModel:
    if not isinstance(obj, dict) or "A" not in obj:
        raise InvalidData("model file must be an object with key 'A'")
    c = obj.get("c")
    if c is not None:
        c = [_scaling_entry(x) for x in c]
    return validate_model(obj["A"], c, name=obj.get("name"))


def load_model(path) -> ToricModel:
    with open(path) as fh:
        return model_from_json(json.load(fh))


def save_model(model: ToricModel, path) -> None:
    Path(path).write_text(json.dumps(model.to_json()) + "\n")


def load_data(path) -> list[int]:
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith("["):
        vals = json.loads(stripped)
    else:
        vals = []
        for row in csv.reader(stripped.splitlines()):
            if not row or not row[0].strip():
                continue
            if len(row) != 1:
                raise InvalidData("data CSV must have a single column")
            try:
                vals.append(int(row[0]))
            except ValueError:
                if vals:
                    raise InvalidData(f"non-integer count {row[0]!r}")
                continue  # header line
    out = []
    for v in vals:
        if isinstance(v, bool) or (isinstance(v, float) and not v.is_integer()) or not isinstance(v, (int, float)):
            raise InvalidData(f"non-integer count {v!r}")
        if v < 0:
            raise InvalidData("counts must be nonnegative")
        out.append(int(v))
    return out


def load_scaling(path) -> list:
    """A JSON array of scalings, or an object with key ``c``."""
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, dict):
        obj = obj.get("c")
    if not isinstance(obj, list):
        raise InvalidData("scaling file must be a JSON array or an object with key 'c'")
    return [_scaling_entry(x) for x in obj]
