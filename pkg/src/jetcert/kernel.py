"""Exact arithmetic kernel: polynomials, piecewise densities, exponential enclosures.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever rounds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, OutOfRangeError, PreconditionError, UnsupportedDegreeError

Rat = Fraction
RatLike = Union[Fraction, int, str]


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/7"`` to a Fraction. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


class Poly:
    """Univariate polynomial with rational coefficients, ``coeffs[i]`` multiplying ``t**i``.

    Trailing zeros are stripped, so the zero polynomial has no coefficients and
    equal polynomials compare equal.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c: RatLike) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RatLike = 1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def linear(cls, slope: RatLike, intercept: RatLike) -> "Poly":
        """The polynomial ``slope*t + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, t: RatLike) -> Fraction:
        t = rat(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Poly | RatLike") -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly | RatLike") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: RatLike) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: "Poly | RatLike") -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f"{c}*t" if i == 1 else f"{c}*t^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)


def _as_poly(x: "Poly | RatLike") -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


T = Poly([0, 1])  # the identity polynomial t


def poly_eval(P: Poly, t: RatLike) -> Fraction:
    return P(t)


def poly_integrate(P: Poly, a: RatLike, b: RatLike) -> Fraction:
    """Exact integral of ``P`` over ``[a, b]``; requires ``a <= b``."""
    a, b = rat(a), rat(b)
    if a > b:
        raise PreconditionError(f"integration bounds out of order: {a} > {b}")
    F = P.antiderivative()
    return F(b) - F(a)


def affine_compose(P: Poly, a: RatLike, b: RatLike) -> Poly:
    """Return ``Q`` with ``Q(t) = P(a*t + b)``, expanded by Horner's scheme."""
    inner = Poly.linear(a, b)
    out = Poly()
    for c in reversed(P.coeffs):
        out = out * inner + c
    return out


def quadratic_argmax_on_interval(P: Poly, a: RatLike, b: RatLike) -> tuple[Fraction, Fraction]:
    """Exact maximiser and maximum of a polynomial of degree <= 2 on ``[a, b]``.

    Ties go to the smaller argument.
    """
    a, b = rat(a), rat(b)
    if P.degree > 2:
        raise UnsupportedDegreeError(f"degree {P.degree} > 2")
    if a > b:
        raise PreconditionError(f"interval out of order: {a} > {b}")
    candidates = [a, b]
    if P.degree == 2 and P.coeff(2) < 0:
        vertex = -P.coeff(1) / (2 * P.coeff(2))
        if a <= vertex <= b:
            candidates.append(vertex)
    best = min(candidates, key=lambda s: (-P(s), s))
    return best, P(best)


class Provenance(str, enum.Enum):
    """Which counting estimate a density piece comes from."""

    EST1 = "EST1"
    EST2 = "EST2"
    EST3 = "EST3"
    EST4 = "EST4"
    F3 = "F3"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class PiecewiseDensity:
    """Piecewise polynomial on ``[b0, bm]``; piece ``i`` lives on ``(b_i, b_{i+1}]``.

    The first piece also owns the left endpoint ``b0``.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]
    provenance: tuple[Provenance, ...]

    def __init__(
        self,
        breakpoints: Sequence[RatLike],
        pieces: Sequence[Poly],
        provenance: Sequence[Provenance | str] | None = None,
    ):
        bps = tuple(rat(b) for b in breakpoints)
        pcs = tuple(pieces)
        prov = tuple(Provenance(p) for p in provenance) if provenance is not None else (Provenance.CUSTOM,) * len(pcs)
        if len(bps) < 2:
            raise PreconditionError("need at least two breakpoints")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise PreconditionError(f"breakpoints not strictly increasing: {bps}")
        if len(pcs) != len(bps) - 1 or len(prov) != len(pcs):
            raise PreconditionError("need exactly one piece and one provenance label per interval")
        for i, P in enumerate(pcs):
            if P(bps[i]) < 0 or P(bps[i + 1]) < 0:
                raise PreconditionError(f"piece {i} is negative at an endpoint of ({bps[i]}, {bps[i + 1]}]")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)
        object.__setattr__(self, "provenance", prov)

    @property
    def domain(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def intervals(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.breakpoints, self.breakpoints[1:]))

    def piece_index(self, t: RatLike) -> int:
        t = rat(t)
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise DomainError(f"{t} outside [{lo}, {hi}]")
        for i, right in enumerate(self.breakpoints[1:]):
            if t <= right:
                return i
        raise AssertionError("unreachable")

    def __call__(self, t: RatLike) -> Fraction:
        return self.pieces[self.piece_index(t)](t)

    def __add__(self, other: "PiecewiseDensity") -> "PiecewiseDensity":
        if self.breakpoints != other.breakpoints:
            raise PreconditionError("densities must share a breakpoint grid to be added")
        return PiecewiseDensity(
            self.breakpoints,
            [P + Q for P, Q in zip(self.pieces, other.pieces)],
            [Provenance.CUSTOM] * len(self.pieces),
        )

    def integrate(self, a: RatLike | None = None, b: RatLike | None = None) -> Fraction:
        lo, hi = self.domain
        return piecewise_integrate(self, lo if a is None else a, hi if b is None else b)


def piecewise_integrate(g: PiecewiseDensity, a: RatLike, b: RatLike) -> Fraction:
    """Exact integral of ``g`` over ``[a, b]``, summed piece by piece."""
    a, b = rat(a), rat(b)
    lo, hi = g.domain
    if not (lo <= a <= b <= hi):
        raise DomainError(f"[{a}, {b}] not contained in domain [{lo}, {hi}]")
    total = Fraction(0)
    for (left, right), P in zip(g.intervals(), g.pieces):
        x, y = max(left, a), min(right, b)
        if x < y:
            total += poly_integrate(P, x, y)
    return total


@dataclass(frozen=True)
class ExpBound:
    x: Fraction
    lower: Fraction
    upper: Fraction
    terms: int

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, value: RatLike) -> bool:
        return self.lower <= rat(value) <= self.upper


def _taylor_enclosure_nonneg(x: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    # 0 <= x <= 1: partial sum is a lower bound; Lagrange remainder <= 3 x^terms / terms!
    partial = sum((x**i / math.factorial(i) for i in range(terms)), Fraction(0))
    remainder = 3 * x**terms / math.factorial(terms)
    return partial, partial + remainder


def exp_bounds(x: RatLike, terms: int) -> ExpBound:
    """Rational enclosure of ``e**x`` for ``|x| <= 1`` from ``terms`` Taylor terms.

    Negative arguments use the reciprocal of the enclosure of ``e**(-x)``.
    """
    x = rat(x)
    if abs(x) > 1:
        raise OutOfRangeError(f"|x| = {abs(x)} > 1")
    if terms < 1:
        raise PreconditionError("terms must be >= 1")
    if x == 0:
        return ExpBound(x, Fraction(1), Fraction(1), terms)
    if x > 0:
        lo, hi = _taylor_enclosure_nonneg(x, terms)
    else:
        lo_neg, hi_neg = _taylor_enclosure_nonneg(-x, terms)
        lo, hi = 1 / hi_neg, 1 / lo_neg
    return ExpBound(x, lo, hi, terms)
