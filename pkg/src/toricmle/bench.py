"""IPS versus homotopy timing grid on rational normal scrolls.

For every (blocks, k) cell the scroll with all n_i = k is built, random
counts are drawn, and the MLE at the all-ones scaling is computed twice:
by IPS directly, and by tracking from the binomial scaling whose MLE has a
closed form. Both answers must agree before a timing is recorded.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import SolverDisagreement
from .families import ScrollSpec, binomial_scroll_scaling, scroll_closed_form_start, scroll_model
from .homotopy import TrackerConfig, track
from .ips import IpsConfig, ips_solve

HEADER = ("family", "d", "k", "solver", "mean_seconds", "agreement_residual")
THREADS_ENV = "TORICMLE_THREADS"


@dataclass(frozen=True)
class BenchSpec:
    d_values: tuple = (5, 10, 15)  # number of scroll blocks (d - 1)
    k_values: tuple = tuple(range(4, 14))
    trials: int = 7
    seed: int = 0
    agreement_tol: float = 1e-8
    u_low: int = 1
    u_high: int = 1000
    output: Optional[str] = None

    def __post_init__(self):
        if not self.d_values or not self.k_values:
            raise ValueError("grid ranges must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass
class CellResult:
    d: int
    k: int
    ips_seconds: float
    homotopy_seconds: float
    agreement: float
    counts: list


def cell_counts(spec: BenchSpec, d: int, k: int) -> list[np.ndarray]:
    """Data vectors of one cell; a pure function of (seed, d, k)."""
    n = d * (k + 1)
    rng = np.random.default_rng([spec.seed, d, k])
    return [rng.integers(spec.u_low, spec.u_high + 1, size=n) for _ in range(spec.trials)]


def run_cell(spec: BenchSpec, d: int, k: int,
             ips_cfg: Optional[IpsConfig] = None,
             tracker_cfg: Optional[TrackerConfig] = None) -> CellResult:
    ips_cfg = ips_cfg or IpsConfig(check_monotone=False)
    scroll = ScrollSpec((k,) * d)
    stat = scroll_model(scroll)
    easy = stat.with_scaling(binomial_scroll_scaling(scroll))
    t_ips = t_hom = 0.0
    worst = 0.0
    counts = cell_counts(spec, d, k)
    for u in counts:
        t0 = time.perf_counter()
        r_ips = ips_solve(stat, u, ips_cfg)
        t1 = time.perf_counter()
        start = scroll_closed_form_start(scroll, u)
        r_hom, _ = track((easy, stat), u, start, tracker_cfg)
        t2 = time.perf_counter()
        t_ips += t1 - t0
        t_hom += t2 - t1
        gap = float(np.max(np.abs(r_ips.p_hat - r_hom.p_hat)))
        if not gap <= spec.agreement_tol:
            raise SolverDisagreement(f"cell d={d} k={k}: IPS and homotopy differ by {gap:.3g}")
        worst = max(worst, gap)
    return CellResult(d, k, t_ips / spec.trials, t_hom / spec.trials, worst, [u.tolist() for u in counts])


def run_bench(spec: BenchSpec, threads: Optional[int] = None) -> str:
    """Run the grid and return the CSV text (also written to ``spec.output``)."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    cells = [(d, k) for d in spec.d_values for k in spec.k_values]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda dk: run_cell(spec, *dk), cells))
    else:
        results = [run_cell(spec, d, k) for d, k in cells]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in results:
        w.writerow(["scroll", r.d, r.k, "ips", f"{r.ips_seconds:.6e}", f"{r.agreement:.3e}"])
        w.writerow(["scroll", r.d, r.k, "homotopy", f"{r.homotopy_seconds:.6e}", f"{r.agreement:.3e}"])
    text = buf.getvalue()
    if spec.output:
        with open(spec.output, "w") as fh:
            fh.write(text)
    return text


def parse_range(text: str) -> tuple:
    """``"4-13"`` or ``"5,10,15"`` -> tuple of ints."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)
