"""Model families and exact ML-degree / discriminant computations.

Everything that decides "is this zero?" runs in exact rational arithmetic;
float scalings are refused there.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exact
from .errors import (
    DimensionMismatch,
    KernelDimension,
    NotGeneralPosition,
    NotHypersurface,
    RankReductionFailed,
    StartInvalid,
    ZeroScaling,
)
from .exact import as_fraction
from .model import (
    ToricModel,
    as_data,
    birch_residual,
    evaluate_map,
    jacobian,
    likelihood_residual,
    validate_model,
)
from .polynomial import RationalPoly, distinct_root_count, product


def _exact_scaling(c) -> list[Fraction]:
    out = [as_fraction(x) for x in c]
    if any(x == 0 for x in out):
        raise ZeroScaling("scaling entries must be nonzero")
    return out


def _polish(model: ToricModel, u, theta, tol=1e-10, max_iters=20):
    """Newton on the likelihood residual from a closed-form guess."""
    dv = as_data(u, model)
    theta = np.asarray(theta, dtype=float)
    for _ in range(max_iters):
        p = evaluate_map(model, theta)
        if birch_residual(model, dv, p) <= 1e-14:
            break
        step = np.linalg.solve(jacobian(model, dv, theta), -likelihood_residual(model, dv, theta))
        new = theta + step
        if not np.all(new > 0):
            raise StartInvalid("Newton polish left the positive orthant")
        theta = new
    if not np.all(theta > 0) or birch_residual(model, dv, evaluate_map(model, theta)) > tol:
        raise StartInvalid("closed-form start did not polish to a Birch point")
    return theta


# --------------------------------------------------------------------- scrolls

@dataclass(frozen=True)
class ScrollSpec:
    """Block sizes ``(n_1, ..., n_{d-1})`` of a rational normal scroll."""

    n_list: tuple

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(x) for x in self.n_list))
        if not self.n_list or any(x < 1 for x in self.n_list):
            raise DimensionMismatch("scroll blocks need n_i >= 1")

    @property
    def blocks(self) -> int:
        return len(self.n_list)

    @property
    def n(self) -> int:
        return self.blocks + sum(self.n_list)

    @property
    def degree(self) -> int:
        return sum(self.n_list)

    def block_slices(self) -> list[slice]:
        out, start = [], 0
        for ni in self.n_list:
            out.append(slice(start, start + ni + 1))
            start += ni + 1
        return out


def _spec(spec) -> ScrollSpec:
    return spec if isinstance(spec, ScrollSpec) else ScrollSpec(tuple(spec))


def scroll_matrix(spec) -> list[list[int]]:
    """Indicator rows for blocks 1..d-2, then the within-block exponent row."""
    spec = _spec(spec)
    D = spec.blocks
    rows = [[0] * spec.n for _ in range(D)]
    col = 0
    for i, ni in enumerate(spec.n_list):
        for j in range(ni + 1):
            if i < D - 1:
                rows[i][col] = 1
            rows[D - 1][col] = j
            col += 1
    return rows


def scroll_model(spec, c=None, name: Optional[str] = None) -> ToricModel:
    spec = _spec(spec)
    if c is not None and len(c) != spec.n:
        raise DimensionMismatch(f"scroll {spec.n_list} has {spec.n} states, got {len(c)} scalings")
    return validate_model(scroll_matrix(spec), c, name=name or f"scroll{spec.n_list}")


def scroll_polynomials(spec, c) -> list[RationalPoly]:
    """The per-block polynomials ``g_i(x) = sum_j c_ij x^j``."""
    spec = _spec(spec)
    cs = _exact_scaling(c)
    if len(cs) != spec.n:
        raise DimensionMismatch(f"expected {spec.n} scalings, got {len(cs)}")
    return [RationalPoly(cs[sl]) for sl in spec.block_slices()]


def scroll_mldegree(spec, c) -> int:
    """ML degree: number of distinct roots of ``g_1 ... g_{d-1}``."""
    return distinct_root_count(product(scroll_polynomials(spec, c)))


def hirzebruch_mldegree(n1: int, n2: int) -> int:
    if n1 < 1 or n2 < 1:
        raise ValueError("n1, n2 must be positive")
    return n1 + n2 - math.gcd(n1 + 1, n2 + 1) + 1


def binomial_scroll_scaling(spec) -> list[int]:
    spec = _spec(spec)
    return [math.comb(ni, j) for ni in spec.n_list for j in range(ni + 1)]


def scroll_closed_form_start(spec, u, polish: bool = True) -> np.ndarray:
    """Positive MLE of the binomially scaled scroll.

    With ``c_ij = binom(n_i, j)`` every block is ``(1+x)^n_i``, and the
    Birch equations decouple: the exponent row gives
    ``(Au)_{d-1} (1 + x) = x * sum_i n_i u_{i+}``, then
    ``s = u_{(d-1)+} / (u_+ (1+x)^n_{d-1})`` and
    ``theta_i = u_{i+} / u_{(d-1)+} * (1+x)^(n_{d-1} - n_i)``.

    Returns theta ordered as ``(theta_1..theta_{d-2}, x, s)``.
    """
    spec = _spec(spec)
    model = scroll_model(spec, binomial_scroll_scaling(spec))
    dv = as_data(u, model)
    if any(x <= 0 for x in dv.u):
        raise StartInvalid("closed form needs strictly positive counts")
    uu = dv.u
    blocks = [uu[sl] for sl in spec.block_slices()]
    ui = [sum(b) for b in blocks]
    au_last = sum(j * v for b in blocks for j, v in enumerate(b))
    weighted = sum(ni * s for ni, s in zip(spec.n_list, ui))
    x = Fraction(au_last, weighted - au_last)
    up = dv.u_plus
    n_last = spec.n_list[-1]
    xf = float(x)
    s = ui[-1] / (up * (1 + xf) ** n_last)
    thetas = [ui[i] / ui[-1] * (1 + xf) ** (n_last - spec.n_list[i]) for i in range(spec.blocks - 1)]
    theta = np.array(thetas + [xf, s])
    if polish:
        theta = _polish(model, dv, theta)
    return theta


# -------------------------------------------------------------------- veronese

def veronese_columns(m: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= k in m variables.

    Ordered colexicographically: (0,0), (1,0), (2,0), (0,1), (1,1), (0,2)
    for m = k = 2.
    """
    if m < 1 or k < 1:
        raise DimensionMismatch("need m >= 1 and k >= 1")
    cols = [a for a in itertools.product(range(k + 1), repeat=m) if sum(a) <= k]
    return sorted(cols, key=lambda a: tuple(reversed(a)))


def veronese_model(m: int, k: int, c=None) -> ToricModel:
    cols = veronese_columns(m, k)
    A = [[a[i] for a in cols] for i in range(m)]
    if c is not None and len(c) != len(cols):
        raise DimensionMismatch(f"Ver({m},{k}) has {len(cols)} states, got {len(c)} scalings")
    return validate_model(A, c, name=f"Ver({m},{k})")


def veronese_rank1_scaling(m: int, k: int, b: Sequence) -> list[Fraction]:
    """Coefficients of ``(b_0 + b_1 t_1 + ... + b_m t_m)^k`` in column order."""
    b = [as_fraction(x, strict=False) for x in b]
    if len(b) != m + 1:
        raise DimensionMismatch(f"need {m + 1} linear-form coefficients")
    if any(x == 0 for x in b):
        raise ZeroScaling("linear-form coefficients must be nonzero")
    out = []
    for a in veronese_columns(m, k):
        a0 = k - sum(a)
        coef = Fraction(math.factorial(k))
        for e in (a0, *a):
            coef /= math.factorial(e)
        coef *= b[0] ** a0
        for bi, e in zip(b[1:], a):
            coef *= bi ** e
        out.append(coef)
    return out


def veronese_rank1_start(m: int, k: int, b: Sequence, u, polish: bool = True) -> np.ndarray:
    """Positive MLE when the scaling is a k-th power of a linear form.

    With ``f = L^k`` the likelihood equations reduce to the linear system
    ``(Au)_i L = k u_+ b_i theta_i``; summing gives
    ``L = b_0 / (1 - sum_i (Au)_i / (k u_+))`` and ``s = L^-k``.
    """
    bf = [float(as_fraction(x, strict=False)) for x in b]
    model = veronese_model(m, k, veronese_rank1_scaling(m, k, b))
    dv = as_data(u, model)
    up = dv.u_plus
    Au = model.A.astype(float) @ dv.array
    denom = 1.0 - Au.sum() / (k * up)
    if denom <= 0:
        raise StartInvalid("data concentrated on the top-degree face; no positive solution")
    L = bf[0] / denom
    theta = np.array([Au[i] * L / (k * up * bf[i + 1]) for i in range(m)] + [L ** (-k)])
    if np.any(theta <= 0):
        raise StartInvalid("linear form coefficients give a non-positive start")
    if polish:
        theta = _polish(model, dv, theta)
    return theta


def ver2_matrix(m: int, c) -> list[list[Fraction]]:
    """Symmetric (m+1)x(m+1) matrix C with ``(1, t) C (1, t)^T = 2 f``."""
    cols = veronese_columns(m, 2)
    cs = [as_fraction(x) for x in c]
    if len(cs) != len(cols):
        raise DimensionMismatch(f"Ver({m},2) needs {len(cols)} scalings, got {len(cs)}")
    C = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    for a, val in zip(cols, cs):
        idx = [i + 1 for i, e in enumerate(a) for _ in range(e)]
        if not idx:
            C[0][0] = 2 * val
        elif len(idx) == 1:
            C[0][idx[0]] = C[idx[0]][0] = val
        elif idx[0] == idx[1]:
            C[idx[0]][idx[0]] = 2 * val
        else:
            C[idx[0]][idx[1]] = C[idx[1]][idx[0]] = val
    return C


def ver2_scaling_from_matrix(C) -> list[Fraction]:
    """Inverse of :func:`ver2_matrix` for a symmetric matrix."""
    C = [[as_fraction(v) for v in row] for row in C]
    m = len(C) - 1
    out = []
    for a in veronese_columns(m, 2):
        idx = [i + 1 for i, e in enumerate(a) for _ in range(e)]
        if not idx:
            out.append(C[0][0] / 2)
        elif len(idx) == 1:
            out.append(C[0][idx[0]])
        elif idx[0] == idx[1]:
            out.append(C[idx[0]][idx[0]] / 2)
        else:
            out.append(C[idx[0]][idx[1]])
    return out


# Table order for Ver(2,2): full triangle, then the three edges, indexed by
# rows of C (0 = constant, 1 = t_1, 2 = t_2).
VER22_FACES = ((0, 1, 2), (0, 1), (1, 2), (0, 2))


def ver2_sigma_test(m: int, c=None, C=None) -> tuple[bool, dict]:
    """Does the scaling lie on Sigma_A for Ver(m, 2)?

    Every face of the degree-2 simplex with at least two vertices
    contributes the principal minor of C on those vertices. Returns
    ``(any minor vanishes, {vertex subset: minor value})``.
    """
    if C is None:
        C = ver2_matrix(m, c)
    else:
        C = [[as_fraction(v) for v in row] for row in C]
        if len(C) != m + 1:
            raise DimensionMismatch(f"C must be {m + 1}x{m + 1}")
    minors = {}
    for r in range(m + 1, 1, -1):
        for S in itertools.combinations(range(m + 1), r):
            minors[S] = exact.det([[C[i][j] for j in S] for i in S])
    return any(v == 0 for v in minors.values()), minors


# ---------------------------------------------------------------------- segre

def hierarchical_model(facets: Sequence[Sequence], levels: Sequence[int], c=None,
                       vertices: Optional[Sequence] = None, name: Optional[str] = None) -> ToricModel:
    """Hierarchical log-linear model on a simplicial complex.

    States are ordered lexicographically with the first vertex most
    significant. Rows use the corner-point basis: one indicator per
    nonempty face S of the complex and per assignment of *nonzero* levels
    to S. Faces are ordered by size, then by first appearance. That basis
    is checked against the raw facet-marginal rows by exact rank.
    """
    facets = [tuple(f) for f in facets]
    if vertices is None:
        vertices = []
        for f in facets:
            for v in f:
                if v not in vertices:
                    vertices.append(v)
    vertices = list(vertices)
    if len(levels) != len(vertices):
        raise DimensionMismatch(f"{len(vertices)} vertices but {len(levels)} level counts")
    if any(int(l) < 2 for l in levels):
        raise DimensionMismatch("every variable needs at least two levels")
    pos = {v: i for i, v in enumerate(vertices)}
    for f in facets:
        if any(v not in pos for v in f) or len(set(f)) != len(f):
            raise DimensionMismatch(f"bad facet {f!r}")
    states = list(itertools.product(*[range(int(l)) for l in levels]))

    faces = []
    for r in range(1, max(len(f) for f in facets) + 1):
        for f in facets:
            for S in itertools.combinations(sorted(f, key=pos.get), r):
                if S not in faces:
                    faces.append(S)
    rows = []
    for S in faces:
        idx = [pos[v] for v in S]
        for assign in itertools.product(*[range(1, int(levels[i])) for i in idx]):
            rows.append([int(all(s[i] == a for i, a in zip(idx, assign))) for s in states])

    raw = []
    for f in facets:
        idx = [pos[v] for v in f]
        for assign in itertools.product(*[range(int(levels[i])) for i in idx]):
            raw.append([int(all(s[i] == a for i, a in zip(idx, assign))) for s in states])
    A_bar = rows + [[1] * len(states)]
    if exact.rank(A_bar) != len(A_bar) or not exact.same_row_space(A_bar, raw):
        raise RankReductionFailed("corner-point basis does not match the facet marginals")
    label = name or ",".join("".join(map(str, f)) for f in facets)
    return validate_model(rows, c, name=label, _checked=True)


def segre_model(m: int, n: int, c=None) -> ToricModel:
    """Independence model of an m x n table; states ``(i, j)`` row-major."""
    if c is not None:
        c = np.asarray(c, dtype=object).ravel().tolist()
    return hierarchical_model([(0,), (1,)], [m, n], c, name=f"segre{m}x{n}")


def segre_rank1_test(c) -> bool:
    """True iff every 2-minor of the m x n scaling matrix vanishes exactly."""
    M = [[as_fraction(v) for v in row] for row in c]
    for i, k in itertools.combinations(range(len(M)), 2):
        for j, l in itertools.combinations(range(len(M[0])), 2):
            if M[i][j] * M[k][l] != M[i][l] * M[k][j]:
                return False
    return True


def segre_rank1_mle(u) -> list[Fraction]:
    """Exact MLE ``u_{i+} u_{+j} / u_{++}^2`` of the independence model (row-major)."""
    U = [[int(v) for v in row] for row in u]
    tot = sum(map(sum, U))
    if tot <= 0:
        raise ValueError("counts must have a positive total")
    rs = [sum(row) for row in U]
    cs = [sum(col) for col in zip(*U)]
    return [Fraction(r * s, tot * tot) for r in rs for s in cs]


# ---------------------------------------------------------------- hypersurface

@dataclass(frozen=True)
class KernelVector:
    w: tuple

    @property
    def positive(self) -> tuple:
        return tuple(i for i, x in enumerate(self.w) if x > 0)

    @property
    def negative(self) -> tuple:
        return tuple(i for i, x in enumerate(self.w) if x < 0)

    @property
    def full_support(self) -> bool:
        return all(x != 0 for x in self.w)


def hypersurface_kernel(model: ToricModel) -> KernelVector:
    if model.n != model.d + 1:
        raise NotHypersurface(f"need n = d + 1, got n={model.n}, d={model.d}")
    basis = exact.integer_kernel(model.A_bar.tolist())
    if len(basis) != 1:
        raise KernelDimension(f"kernel has dimension {len(basis)}")
    return KernelVector(tuple(basis[0]))


def hypersurface_generator(model: ToricModel) -> tuple[list[int], list[int]]:
    """Exponents ``(pos, neg)`` of the binomial ``p^pos - p^neg`` cutting out the model."""
    w = hypersurface_kernel(model).w
    return [x if x > 0 else 0 for x in w], [-x if x < 0 else 0 for x in w]


def hypersurface_discriminant(model: ToricModel, c=None) -> Fraction:
    """Exact A-discriminant of a toric hypersurface in general position."""
    w = hypersurface_kernel(model).w
    if not all(x != 0 for x in w):
        raise NotGeneralPosition(f"kernel vector {w} has a zero entry")
    cs = _exact_scaling(model.c if c is None else c)
    if len(cs) != model.n:
        raise DimensionMismatch("scaling length does not match the model")
    pos = [i for i, x in enumerate(w) if x > 0]
    neg = [i for i, x in enumerate(w) if x < 0]
    wpos = math.prod(w[i] ** w[i] for i in pos)
    wneg = math.prod((-w[i]) ** (-w[i]) for i in neg)
    cpos = math.prod((cs[i] ** w[i] for i in pos), start=Fraction(1))
    cneg = math.prod((cs[i] ** (-w[i]) for i in neg), start=Fraction(1))
    return wneg * cpos - wpos * cneg


def hypersurface_sigma_test(model: ToricModel, c=None) -> tuple[bool, Fraction]:
    value = hypersurface_discriminant(model, c)
    return value == 0, value
