"""Scaled toric models and their likelihood system.

A model is an integer exponent matrix ``A`` ((d-1) x n) together with a
nonzero scaling vector ``c``. Internally ``A`` is stored homogenized as
``A_bar`` (A with a row of ones appended), and the overall scale ``s`` of
the monomial map becomes the last parameter ``theta[d-1]``. With that
convention every likelihood system is square (d equations, d unknowns):

    p_j(theta)  = c_j * prod_i theta_i ** A_bar[i, j]
    F(theta)    = u_plus * A_bar @ p(theta) - A_bar @ u
    J(theta)    = u_plus * A_bar @ diag(p) @ A_bar.T @ diag(1 / theta)

``F(theta) = 0`` says ``A_bar p = A_bar u / u_plus``; the ones row makes
``sum(p) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational
from typing import Any, Optional

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch,
    InvalidData,
    InvalidScaling,
    NonPositiveP,
    RankDeficient,
    ZeroScaling,
    ZeroTheta,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _scaling_value(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not scalings")
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    raise TypeError(f"unsupported scaling entry {x!r}")


@dataclass(frozen=True, eq=False)
class ToricModel:
    """Immutable scaled toric model. Build through :func:`validate_model`."""

    A: np.ndarray
    A_bar: np.ndarray
    c: tuple
    name: Optional[str] = None
    _A_bar_f: np.ndarray = field(init=False, repr=False)
    _c_f: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_A_bar_f", _frozen(self.A_bar.astype(float)))
        object.__setattr__(self, "_c_f", _frozen(np.array([float(x) for x in self.c])))

    @property
    def d(self) -> int:
        return self.A_bar.shape[0]

    @property
    def n(self) -> int:
        return self.A_bar.shape[1]

    @property
    def c_float(self) -> np.ndarray:
        return self._c_f

    @property
    def A_bar_float(self) -> np.ndarray:
        return self._A_bar_f

    @property
    def is_positive(self) -> bool:
        return bool(np.all(self._c_f > 0))

    def with_scaling(self, c, name: Optional[str] = None) -> "ToricModel":
        return validate_model(self.A, c, name=name if name is not None else self.name, _checked=True)

    def same_matrix(self, other: "ToricModel") -> bool:
        return self.A_bar.shape == other.A_bar.shape and bool(np.array_equal(self.A_bar, other.A_bar))

    def to_json(self) -> dict:
        cs = [str(x) if isinstance(x, Fraction) and x.denominator != 1 else
              (int(x) if isinstance(x, Fraction) else x) for x in self.c]
        out: dict[str, Any] = {"A": self.A.tolist(), "c": cs}
        if self.name is not None:
            out["name"] = self.name
        return out

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<ToricModel{label} d={self.d} n={self.n}>"


def validate_model(A, c=None, name: Optional[str] = None, _checked: bool = False) -> ToricModel:
    """Build a :class:`ToricModel` from a (d-1) x n integer matrix and scaling.

    ``c`` defaults to all ones. Entries of ``c`` may be ints, Fractions,
    strings such as ``"3/2"`` or floats; the exact routines in
    :mod:`toricmle.families` refuse floats.
    """
    A = np.asarray(A)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if A.ndim != 2 or A.shape[1] == 0:
        raise DimensionMismatch(f"A must be a nonempty 2-d matrix, got shape {A.shape}")
    if A.dtype.kind == "f":
        if not np.all(A == np.round(A)):
            raise DimensionMismatch("A must have integer entries")
    elif A.dtype.kind not in "iu":
        if A.dtype == object:
            A = np.array([[int(v) for v in row] for row in A.tolist()])
        else:
            raise DimensionMismatch(f"A must be an integer matrix, got dtype {A.dtype}")
    A = A.astype(np.int64)
    n = A.shape[1]
    if c is None:
        c = [1] * n
    c = tuple(_scaling_value(x) for x in c)
    if len(c) != n:
        raise DimensionMismatch(f"scaling has {len(c)} entries, A has {n} columns")
    zeros = [j for j, x in enumerate(c) if x == 0]
    if zeros:
        raise ZeroScaling(f"scaling entries at {zeros} are zero")
    A_bar = np.vstack([A, np.ones((1, n), dtype=np.int64)])
    if not _checked:
        r = exact.rank(A_bar.tolist())
        if r != A_bar.shape[0]:
            raise RankDeficient(f"homogenized matrix has rank {r}, need {A_bar.shape[0]}")
    return ToricModel(_frozen(A.copy()), _frozen(A_bar), c, name)


@dataclass(frozen=True)
class DataVector:
    u: tuple

    def __post_init__(self):
        if any(x < 0 for x in self.u):
            raise InvalidData("counts must be nonnegative")
        if sum(self.u) <= 0:
            raise InvalidData("counts must have a positive total")

    @property
    def u_plus(self) -> int:
        return sum(self.u)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.u, dtype=float)

    def __len__(self):
        return len(self.u)


def as_data(u, model: Optional[ToricModel] = None) -> DataVector:
    if isinstance(u, DataVector):
        dv = u
    else:
        vals = []
        for x in np.asarray(u).ravel().tolist():
            if float(x) != int(x):
                raise InvalidData(f"count {x!r} is not an integer")
            vals.append(int(x))
        dv = DataVector(tuple(vals))
    if model is not None and len(dv) != model.n:
        raise DimensionMismatch(f"data has {len(dv)} entries, model has {model.n} states")
    return dv


@dataclass
class MleResult:
    p_hat: np.ndarray
    theta_hat: Optional[np.ndarray]
    birch_residual: float
    iterations: int
    log_likelihood: float
    solver: str = ""
    info: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "solver": self.solver,
            "p_hat": [float(x) for x in self.p_hat],
            "theta_hat": None if self.theta_hat is None else [float(x) for x in self.theta_hat],
            "birch_residual": float(self.birch_residual),
            "iterations": int(self.iterations),
            "log_likelihood": float(self.log_likelihood),
        }


def _theta(model: ToricModel, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (model.d,):
        raise DimensionMismatch(f"theta must have length {model.d}, got shape {theta.shape}")
    return theta


def _p_vec(model: ToricModel, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (model.n,):
        raise DimensionMismatch(f"p must have length {model.n}, got shape {p.shape}")
    return p


def monomials(A_bar: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """``prod_i theta_i ** A_bar[i, j]`` for every column j."""
    if np.all(theta > 0):
        return np.exp(np.log(theta) @ A_bar)
    zero = theta == 0
    if np.any(zero):
        if np.any(A_bar[zero] < 0):
            raise ZeroTheta("theta has a zero coordinate under a negative exponent")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.prod(theta[:, None] ** A_bar, axis=0)
    return out


def evaluate_map(model: ToricModel, theta) -> np.ndarray:
    """Unnormalized point ``p_j = c_j * theta^(A_bar column j)``."""
    theta = _theta(model, theta)
    return model.c_float * monomials(model.A_bar_float, theta)


def sufficient_statistics(model: ToricModel, u) -> list[Fraction]:
    """Exact ``A_bar u / u_plus``; the last entry is 1."""
    dv = as_data(u, model)
    up = dv.u_plus
    return [Fraction(int(sum(int(a) * x for a, x in zip(row, dv.u))), up) for row in model.A_bar]


def target_statistics(model: ToricModel, u) -> np.ndarray:
    dv = as_data(u, model)
    return model.A_bar_float @ dv.array / dv.u_plus


def birch_residual(model: ToricModel, u, p) -> float:
    """``max |A_bar p - A_bar u / u_plus|``; includes the normalization row."""
    p = _p_vec(model, p)
    return float(np.max(np.abs(model.A_bar_float @ p - target_statistics(model, u))))


def likelihood_residual(model: ToricModel, u, theta) -> np.ndarray:
    dv = as_data(u, model)
    p = evaluate_map(model, theta)
    return dv.u_plus * (model.A_bar_float @ p) - model.A_bar_float @ dv.array


def jacobian(model: ToricModel, u, theta) -> np.ndarray:
    """Jacobian of :func:`likelihood_residual` in theta, in factored form."""
    dv = as_data(u, model)
    theta = _theta(model, theta)
    if np.any(theta == 0):
        raise ZeroTheta("Jacobian needs nonzero theta")
    p = evaluate_map(model, theta)
    Ab = model.A_bar_float
    return dv.u_plus * ((Ab * p) @ Ab.T) / theta[None, :]


def log_likelihood(model: ToricModel, u, p) -> float:
    """``sum u_j log p_j - u_plus log(sum p)``; invariant under scaling p."""
    dv = as_data(u, model)
    p = _p_vec(model, p)
    if np.any(p <= 0):
        raise NonPositiveP("log-likelihood needs strictly positive p")
    uu = dv.array
    return float(uu @ np.log(p) - dv.u_plus * np.log(p.sum()))


def require_positive_scaling(model: ToricModel) -> None:
    if not model.is_positive:
        raise InvalidScaling("solvers need a strictly positive scaling vector")
