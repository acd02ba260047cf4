"""Iterative proportional scaling for positively scaled toric models.

Darroch-Ratcliff generalized iterative scaling. The exponent matrix is
first rewritten so that it is nonnegative with unit column sums:
every non-homogenizing row is shifted by its minimum, divided by the
largest column sum, and a slack row restores the column sums to one.
The rewritten rows span the same rational row space as ``A_bar``, so the
fixed points are exactly the Birch points ``A_bar p = A_bar u / u_plus``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvalidScaling, MonotonicityViolated, NotConverged, OffModel
from .model import (
    MleResult,
    ToricModel,
    as_data,
    birch_residual,
    log_likelihood,
    require_positive_scaling,
)


@dataclass(frozen=True)
class IpsConfig:
    epsilon: float = 1e-11
    max_iterations: int = 1_000_000
    check_monotone: bool = True

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class GisSystem:
    """Preconditioned exponent matrix and the map taking statistics to it.

    ``A_prime == transform @ A_bar`` exactly, so sufficient statistics map
    as ``b_prime = transform @ b``.
    """

    A_prime: tuple  # rows of Fractions
    transform: tuple  # rows of Fractions, shape (d', d)
    total: Fraction
    has_slack: bool

    @property
    def A_prime_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.A_prime])

    @property
    def transform_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.transform])


def gis_precondition(model: ToricModel) -> GisSystem:
    A = [[int(v) for v in row] for row in model.A.tolist()]
    k = len(A)
    n = model.n
    shifts = [min(row) for row in A]
    shifted = [[v - m for v in row] for row, m in zip(A, shifts)]
    colsums = [sum(row[j] for row in shifted) for j in range(n)]
    total = Fraction(max(colsums)) if max(colsums) > 0 else Fraction(1)

    # shifted_i = a_i - m_i * ones; scaled_i = shifted_i / total
    rows = [[Fraction(v) / total for v in row] for row in shifted]
    transform = []
    for i in range(k):
        t = [Fraction(0)] * (k + 1)
        t[i] = 1 / total
        t[k] = Fraction(-shifts[i]) / total
        transform.append(t)

    has_slack = any(cs != total for cs in colsums)
    if has_slack:
        rows.append([1 - Fraction(cs) / total for cs in colsums])
        slack = [-sum(transform[i][j] for i in range(k)) for j in range(k + 1)]
        slack[k] += 1
        transform.append(slack)
    return GisSystem(tuple(map(tuple, rows)), tuple(map(tuple, transform)), total, has_slack)


def recover_theta(model: ToricModel, p_hat, tol: float = 1e-6, return_residual: bool = False):
    """Least-squares solve of ``A_bar.T log(theta) = log(p_hat) - log(c)``.

    Raises :class:`OffModel` when the log-system residual exceeds ``tol``.
    """
    p_hat = np.asarray(p_hat, dtype=float)
    if np.any(p_hat <= 0):
        raise OffModel("p_hat must be strictly positive")
    if not model.is_positive:
        raise InvalidScaling("theta recovery needs positive scaling")
    rhs = np.log(p_hat) - np.log(model.c_float)
    x, *_ = np.linalg.lstsq(model.A_bar_float.T, rhs, rcond=None)
    resid = float(np.max(np.abs(model.A_bar_float.T @ x - rhs)))
    if resid > tol:
        raise OffModel(f"log-residual {resid:.3g} exceeds {tol:g}; point is not on the model")
    theta = np.exp(x)
    return (theta, resid) if return_residual else theta


def ips_solve(model: ToricModel, u, cfg: Optional[IpsConfig] = None) -> MleResult:
    """Unique positive MLE of ``model`` for counts ``u``."""
    cfg = cfg or IpsConfig()
    require_positive_scaling(model)
    dv = as_data(u, model)
    sys_ = gis_precondition(model)
    Ap = sys_.A_prime_float
    uu = dv.array
    b = Ap @ uu / dv.u_plus
    if np.any(b <= 0):
        raise NotConverged("a preconditioned marginal of the data is zero; the MLE lies on the boundary")

    A_bar = model.A_bar_float
    target = A_bar @ uu / dv.u_plus
    logb = np.log(b)
    p = model.c_float / model.c_float.sum()
    ll = log_likelihood(model, dv, p) if cfg.check_monotone else None
    resid = float(np.max(np.abs(A_bar @ p - target)))
    it = 0
    while resid > cfg.epsilon:
        if it >= cfg.max_iterations:
            raise NotConverged(
                f"no convergence after {it} iterations (residual {resid:.3g}); "
                "data may lie on the boundary of the marginal cone or epsilon is too small"
            )
        p = p * np.exp(Ap.T @ (logb - np.log(Ap @ p)))
        it += 1
        if cfg.check_monotone:
            new_ll = log_likelihood(model, dv, p)
            if new_ll < ll - 1e-12 * max(1.0, abs(ll)):
                raise MonotonicityViolated(f"log-likelihood dropped at iteration {it}: {ll!r} -> {new_ll!r}")
            ll = new_ll
        resid = float(np.max(np.abs(A_bar @ p - target)))

    try:
        theta = recover_theta(model, p)
    except OffModel:
        theta = None
    return MleResult(
        p_hat=p,
        theta_hat=theta,
        birch_residual=birch_residual(model, dv, p),
        iterations=it,
        log_likelihood=log_likelihood(model, dv, p),
        solver="ips",
    )
