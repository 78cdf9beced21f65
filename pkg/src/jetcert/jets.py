"""Jet counts on the exceptional divisor P^{d-1} and the fat-point defect density."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import PreconditionError, ResourceError
from .kernel import Poly

ORACLE_MAX_LEVEL = 40


@dataclass(frozen=True)
class JetCountSpec:
    dim: int
    level: int
    vanishing_order: int = 0

    def __post_init__(self):
        _check(self.dim, self.level, self.vanishing_order)

    def full(self) -> int:
        return jet_space_dim(self.dim, self.level)

    def vanishing(self) -> int:
        return point_jet_dim(self.dim, self.level, self.vanishing_order)


def _check(d: int, k: int, m: int = 0) -> None:
    if d < 2:
        raise PreconditionError(f"dimension must be >= 2, got {d}")
    if k < 0 or m < 0:
        raise PreconditionError(f"level and vanishing order must be >= 0, got k={k}, m={m}")


def jet_space_dim(d: int, k: int) -> int:
    """h^0(P^{d-1}, O(k)): the number of degree-k forms in d variables."""
    _check(d, k)
    return comb(k + d - 1, d - 1)


def killed_jets(d: int, k: int, m: int) -> int:
    """Conditions imposed on degree-k forms by vanishing to order m at a point."""
    _check(d, k, m)
    return sum(comb(j + d - 2, d - 2) for j in range(min(m, k + 1)))


def point_jet_dim(d: int, k: int, m: int) -> int:
    """Degree-k forms in d variables vanishing to order >= m at a coordinate point."""
    _check(d, k, m)
    if m > k:
        return 0
    return sum(comb(j + d - 2, d - 2) for j in range(m, k + 1))


def monomial_vanishing_oracle(d: int, k: int, m: int) -> int:
    """Brute-force count of monomials of degree k with order >= m at [1:0:...:0].

    The order of x0^a0 * ... at that point is the degree in x1..x_{d-1}.
    """
    _check(d, k, m)
    if k > ORACLE_MAX_LEVEL:
        raise ResourceError(f"enumeration guard: k={k} > {ORACLE_MAX_LEVEL}")
    count = 0
    # a monomial of degree k is a multiset of k variable indices; index 0 is x0
    for factors in itertools.combinations_with_replacement(range(d), k):
        order = sum(1 for v in factors if v != 0)
        if order >= m:
            count += 1
    return count


def fat_point_defect_density(q: int) -> Poly:
    """Asymptotic length density q*u^2/2 of the r-th power of a degree-q fat point, u = r/n."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    return Poly.monomial(2, Fraction(q, 2))


@dataclass(frozen=True)
class OracleReport:
    dims: tuple[int, ...]
    k_max: int
    checked: int
    mismatches: tuple[tuple[int, int, int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_check(dims=(2, 3, 4), k_max: int = 30, m_slack: int = 2) -> OracleReport:
    """Compare the closed form with brute-force enumeration for all m <= k + m_slack.

    Mismatches are (d, k, m, closed_form, oracle) tuples.
    """
    checked = 0
    bad = []
    for d in dims:
        for k in range(k_max + 1):
            for m in range(k + m_slack + 1):
                a, b = point_jet_dim(d, k, m), monomial_vanishing_oracle(d, k, m)
                checked += 1
                if a != b:
                    bad.append((d, k, m, a, b))
    return OracleReport(tuple(dims), k_max, checked, tuple(bad))
