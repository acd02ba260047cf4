"""Scaling-to-scaling parameter homotopy for the positive MLE.

The straight-line homotopy

    H(theta, t) = t * F_easy(theta) + (1 - t) * F_stat(theta)

is the likelihood residual of the model with scaling
``c(t) = t * c_easy + (1 - t) * c_stat``. For positive scalings and
positive data, each ``c(t)`` has exactly one positive Birch point and the
Jacobian ``u_plus * A_bar diag(p) A_bar^T diag(1/theta)`` is nonsingular on
the positive orthant, so the positive path is smooth from t=1 to t=0 and
a plain Euler predictor / Newton corrector follows it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    CorrectorDiverged,
    ModelMismatch,
    PositivityLost,
    SingularJacobian,
    StartInvalid,
    StepUnderflow,
    ZeroTheta,
)
from .model import (
    MleResult,
    ToricModel,
    as_data,
    birch_residual,
    evaluate_map,
    log_likelihood,
    require_positive_scaling,
)


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 0.05
    min_step: float = 1e-9
    corrector_tol: float = 1e-12
    max_newton_iters: int = 6
    step_expand: float = 2.0
    step_contract: float = 0.5
    expand_after: int = 3
    endgame_tol: float = 1e-13

    def __post_init__(self):
        if not 0 < self.min_step <= self.initial_step <= 1:
            raise ValueError("need 0 < min_step <= initial_step <= 1")
        if self.corrector_tol <= 0 or self.endgame_tol <= 0:
            raise ValueError("tolerances must be positive")
        if not 0 < self.step_contract < 1 < self.step_expand:
            raise ValueError("need step_contract < 1 < step_expand")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be at least 1")


@dataclass
class PathTrace:
    samples: list = field(default_factory=list)  # (t, theta, scaled residual)
    accepted: int = 0
    rejected: int = 0
    newton_iterations: int = 0
    det_signs: list = field(default_factory=list)
    step_lengths: list = field(default_factory=list)
    final_residual: float = float("nan")

    @property
    def ts(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    def thetas(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])

    def write_csv(self, path) -> None:
        d = len(self.samples[0][1]) if self.samples else 0
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t"] + [f"theta_{i + 1}" for i in range(d)] + ["residual"])
            for t, th, r in self.samples:
                w.writerow([repr(float(t))] + [repr(float(x)) for x in th] + [repr(float(r))])


class _System:
    """Float view of the homotopy for one (model pair, data) combination."""

    def __init__(self, pair: Sequence[ToricModel], u):
        easy, stat = pair
        if not easy.same_matrix(stat):
            raise ModelMismatch("easy and target models must share the exponent matrix")
        require_positive_scaling(easy)
        require_positive_scaling(stat)
        self.easy, self.stat = easy, stat
        self.dv = as_data(u, stat)
        self.up = float(self.dv.u_plus)
        self.Ab = stat.A_bar_float
        self.Au = self.Ab @ self.dv.array
        self.c_easy = easy.c_float
        self.c_stat = stat.c_float

    def c_at(self, t: float) -> np.ndarray:
        return t * self.c_easy + (1.0 - t) * self.c_stat

    def mono(self, theta: np.ndarray) -> np.ndarray:
        if np.any(theta == 0):
            raise ZeroTheta("theta has a zero coordinate")
        if np.all(theta > 0):
            return np.exp(np.log(theta) @ self.Ab)
        return np.prod(theta[:, None] ** self.Ab, axis=0)

    def H(self, theta, t) -> np.ndarray:
        p = self.c_at(t) * self.mono(theta)
        return self.up * (self.Ab @ p) - self.Au

    def J(self, theta, t) -> np.ndarray:
        p = self.c_at(t) * self.mono(theta)
        return self.up * ((self.Ab * p) @ self.Ab.T) / theta[None, :]

    def dH_dt(self, theta) -> np.ndarray:
        return self.up * (self.Ab @ ((self.c_easy - self.c_stat) * self.mono(theta)))


def _solve(J, rhs):
    try:
        x = np.linalg.solve(J, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise SingularJacobian("non-finite Newton/tangent step")
    return x


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")


def homotopy_residual(model_pair, u, theta, t) -> np.ndarray:
    _check_t(t)
    return _System(model_pair, u).H(np.asarray(theta, dtype=float), float(t))


def davidenko_tangent(model_pair, u, theta, t) -> np.ndarray:
    """``d theta / d t`` along the path through ``(theta, t)``."""
    _check_t(t)
    sys_ = _System(model_pair, u)
    theta = np.asarray(theta, dtype=float)
    return _tangent(sys_, theta, float(t))


def _tangent(sys_: _System, theta, t):
    return _solve(sys_.J(theta, t), -sys_.dH_dt(theta))


def _newton(sys_: _System, theta, t, tol, max_iters, history=None):
    theta = np.array(theta, dtype=float)
    r = float(np.max(np.abs(sys_.H(theta, t)))) / sys_.up
    if history is not None:
        history.append(r)
    its = 0
    while r > tol:
        if its >= max_iters:
            raise CorrectorDiverged(f"residual {r:.3g} after {its} Newton iterations")
        step = _solve(sys_.J(theta, t), -sys_.H(theta, t))
        new = theta + step
        its += 1
        if not np.all(new > 0) or not np.all(np.isfinite(new)):
            raise CorrectorDiverged("Newton step left the positive orthant")
        theta = new
        r = float(np.max(np.abs(sys_.H(theta, t)))) / sys_.up
        if not np.isfinite(r):
            raise CorrectorDiverged("non-finite residual")
        if history is not None:
            history.append(r)
    return theta, its


def newton_correct(model_pair, u, theta_guess, t, cfg: Optional[TrackerConfig] = None,
                   history: Optional[list] = None) -> np.ndarray:
    """Newton iterations on ``H(., t)`` until ``max|H| / u_plus <= corrector_tol``.

    ``history``, if given, receives the scaled residual before each step.
    """
    cfg = cfg or TrackerConfig()
    _check_t(t)
    sys_ = _System(model_pair, u)
    theta, _ = _newton(sys_, theta_guess, float(t), cfg.corrector_tol, cfg.max_newton_iters, history)
    return theta


def _polish(sys_: _System, theta, t, tol, max_iters=8):
    """Extra Newton steps until ``tol`` or the residual stops improving."""
    r = float(np.max(np.abs(sys_.H(theta, t)))) / sys_.up
    for _ in range(max_iters):
        if r <= tol:
            break
        try:
            new = theta + _solve(sys_.J(theta, t), -sys_.H(theta, t))
        except SingularJacobian:
            break
        if not np.all(new > 0):
            break
        r_new = float(np.max(np.abs(sys_.H(new, t)))) / sys_.up
        if not r_new < r:
            break
        theta, r = new, r_new
    return theta, r


def track(model_pair, u, theta_start, cfg: Optional[TrackerConfig] = None):
    """Follow the positive path from ``t=1`` (easy scaling) to ``t=0``.

    Returns ``(MleResult, PathTrace)`` for the target (second) model.
    """
    cfg = cfg or TrackerConfig()
    sys_ = _System(model_pair, u)
    theta = np.asarray(theta_start, dtype=float)
    if theta.shape != (sys_.Ab.shape[0],):
        raise ValueError(f"theta_start must have length {sys_.Ab.shape[0]}")
    if not np.all(theta > 0):
        raise StartInvalid("start point must be strictly positive")

    trace = PathTrace()
    try:
        theta, its = _newton(sys_, theta, 1.0, cfg.corrector_tol, 4 * cfg.max_newton_iters)
    except (CorrectorDiverged, SingularJacobian) as exc:
        raise StartInvalid(f"start point does not refine to the t=1 solution: {exc}") from exc
    trace.newton_iterations += its

    t = 1.0
    r = float(np.max(np.abs(sys_.H(theta, t)))) / sys_.up
    trace.samples.append((t, theta.copy(), r))
    trace.det_signs.append(int(np.sign(np.linalg.slogdet(sys_.J(theta, t))[0])))

    # identical scalings give a constant path: one step reaches t=0
    h = cfg.initial_step if np.any(sys_.c_easy != sys_.c_stat) else 1.0
    streak = 0
    while t > 0.0:
        h = min(h, t)
        t_new = 0.0 if h >= t else t - h
        ok = False
        try:
            pred = theta - (t - t_new) * _tangent(sys_, theta, t)
            if np.all(pred > 0):
                new, its = _newton(sys_, pred, t_new, cfg.corrector_tol, cfg.max_newton_iters)
                trace.newton_iterations += its
                ok = True
        except (CorrectorDiverged, SingularJacobian, ZeroTheta):
            ok = False

        if not ok:
            trace.rejected += 1
            streak = 0
            h *= cfg.step_contract
            if h < cfg.min_step:
                raise StepUnderflow(f"step {h:.3g} fell below min_step at t={t:.6g}", trace)
            continue

        if not np.all(sys_.c_at(t_new) * sys_.mono(new) > 0):
            raise PositivityLost(f"accepted point at t={t_new:.6g} is not positive", trace)
        trace.step_lengths.append(t - t_new)
        theta, t = new, t_new
        trace.accepted += 1
        r = float(np.max(np.abs(sys_.H(theta, t)))) / sys_.up
        trace.samples.append((t, theta.copy(), r))
        trace.det_signs.append(int(np.sign(np.linalg.slogdet(sys_.J(theta, t))[0])))
        streak += 1
        if streak >= cfg.expand_after:
            h = min(h * cfg.step_expand, 1.0)
            streak = 0

    theta, r = _polish(sys_, theta, 0.0, cfg.endgame_tol)
    trace.samples[-1] = (0.0, theta.copy(), r)
    trace.final_residual = r

    stat = sys_.stat
    p = evaluate_map(stat, theta)
    result = MleResult(
        p_hat=p,
        theta_hat=theta,
        birch_residual=birch_residual(stat, sys_.dv, p),
        iterations=trace.accepted,
        log_likelihood=log_likelihood(stat, sys_.dv, p),
        solver="homotopy",
    )
    if result.birch_residual > cfg.endgame_tol * sys_.up:
        raise CorrectorDiverged(
            f"endpoint residual {result.birch_residual:.3g} above endgame tolerance {cfg.endgame_tol * sys_.up:.3g}"
        )
    return result, trace


def solve_homotopy(model: ToricModel, u, c_easy, theta_start=None,
                   cfg: Optional[TrackerConfig] = None):
    """MLE of ``model`` by tracking from the scaling ``c_easy``.

    Without ``theta_start`` the start point is the IPS solution at ``c_easy``.
    """
    easy = model.with_scaling(c_easy)
    if theta_start is None:
        from .ips import ips_solve

        theta_start = ips_solve(easy, u).theta_hat
        if theta_start is None:
            raise StartInvalid("could not recover a start point from IPS")
    return track((easy, model), u, theta_start, cfg)
