"""Exact integer/rational linear algebra.

Fraction-free (Bareiss) elimination keeps every intermediate entry an
integer minor of the input, so ranks and kernels are decided exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational
from typing import Sequence

from .errors import InexactScaling


def as_fraction(x, strict: bool = True) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Accepts ints, Fractions and strings such as ``"3/4"``. Floats are
    refused when ``strict`` (exact zero tests need exact input), otherwise
    converted losslessly from their binary value.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalings")
    if isinstance(x, (Integral, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float) or hasattr(x, "dtype"):
        f = float(x)
        if f.is_integer():
            return Fraction(int(f))
        if strict:
            raise InexactScaling(f"float value {x!r} where an exact rational is required")
        return Fraction(f)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def _int_rows(M) -> list[list[int]]:
    """Integer rows; rational rows are cleared of denominators (same row space)."""
    rows = []
    for row in M:
        fr = []
        for v in row:
            if isinstance(v, float) or hasattr(v, "dtype"):
                if float(v) != int(v):
                    raise ValueError(f"non-integral entry {v!r}")
                v = int(v)
            fr.append(Fraction(v))
        den = math.lcm(1, *(x.denominator for x in fr))
        rows.append([int(x * den) for x in fr])
    return rows


def bareiss_echelon(M) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the echelon rows and the list of pivot columns. Entries of the
    result stay integral; the last pivot equals (up to sign) a maximal
    nonzero minor.
    """
    A = _int_rows(M)
    m = len(A)
    if m == 0:
        return [], []
    ncols = len(A[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            aic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row_i[j] - aic * row_r[j], prev)
                assert rem == 0, "Bareiss division not exact"
                row_i[j] = q
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M) -> int:
    return len(bareiss_echelon(M)[1])


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to a primitive integer vector.

    The first nonzero entry is made positive.
    """
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = math.lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


def integer_kernel(M) -> list[list[int]]:
    """Basis of the right kernel of ``M`` as primitive integer vectors."""
    E, pivots = bareiss_echelon(M)
    ncols = len(E[0]) if E else 0
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((E[r][j] * x[j] for j in range(pc + 1, ncols)), Fraction(0))
            x[pc] = -s / E[r][pc]
        basis.append(primitive(x))
    return basis


def same_row_space(M1, M2) -> bool:
    """True iff two rational matrices with equal column count span the same rational row space."""
    r1, r2 = rank(M1), rank(M2)
    return r1 == r2 == rank(list(M1) + list(M2))


def det(M) -> Fraction:
    """Exact determinant of a square rational matrix."""
    A = [[as_fraction(v) for v in row] for row in M]
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        piv = A[c][c]
        out *= piv
        for i in range(c + 1, n):
            f = A[i][c] / piv
            if f:
                for j in range(c, n):
                    A[i][j] -= f * A[c][j]
    return sign * out
