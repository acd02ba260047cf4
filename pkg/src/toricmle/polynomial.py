"""Exact univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import ZeroPolynomial
from .exact import as_fraction


class RationalPoly:
    """Polynomial with Fraction coefficients in ascending degree order.

    Trailing zeros are stripped on construction, so ``coeffs[-1]`` is the
    leading coefficient and the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RationalPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        if not isinstance(other, RationalPoly):
            other = RationalPoly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return RationalPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = RationalPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "RationalPoly") -> tuple["RationalPoly", "RationalPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            q = rem[k] / lead
            if q:
                quot[k - dq] = q
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= q * b
        return RationalPoly(quot), RationalPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        lead = self.lead
        return RationalPoly([c / lead for c in self.coeffs])


def _coerce(x) -> RationalPoly:
    return x if isinstance(x, RationalPoly) else RationalPoly([x])


def gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def product(polys: Iterable[RationalPoly]) -> RationalPoly:
    out = RationalPoly([1])
    for p in polys:
        out = out * p
    return out


def distinct_root_count(G: RationalPoly) -> int:
    """Number of distinct complex roots: ``deg G - deg gcd(G, G')``."""
    if not isinstance(G, RationalPoly):
        G = RationalPoly(G)
    if G.is_zero():
        raise ZeroPolynomial("the zero polynomial has infinitely many roots")
    if G.degree == 0:
        return 0
    return G.degree - gcd(G, G.derivative()).degree
