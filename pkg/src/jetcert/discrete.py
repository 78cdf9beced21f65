"""Finite-n jet budget sums, for checking that the densities are the right limits.

For a scaling ``n`` the per-level bounds are the integer counts (with their
floors and +1 shifts) whose n^2-normalised limits are the profile pieces; their
sum over k up to 3np/q, divided by n^3, converges to the profile integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .errors import PreconditionError
from .jets import jet_space_dim, point_jet_dim
from .kernel import RatLike
from .threefold import Candidate, Mode, build_profile, critical_numbers, front_profile, total_budget


@dataclass(frozen=True)
class DiscreteSumReport:
    candidate: Candidate
    mode: Mode
    n: int
    integer_sum: int
    exact_sum: Fraction
    integral: Fraction
    gap: Fraction
    notes: tuple[str, ...] = ()


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def front_bound(c: Candidate, mode: Mode, n: int, alpha2_override: Optional[RatLike] = None,
                halving: int = 2) -> Callable[[int], int]:
    """Integer upper bound on h^0_Y(P^2, O(s)) for levels s up to n*alpha3."""
    mode = Mode(mode)
    n_a1 = n * c.ratio()
    k1 = _floor(n_a1)

    if mode is Mode.SMALL_Q:
        def bound(s: int) -> int:
            if s <= k1:
                return jet_space_dim(3, s)
            return point_jet_dim(3, s, max(0, _ceil(s - n_a1 - 1)))
        return bound

    # raises for inadmissible candidates
    front_profile(c, mode, alpha2_override, halving)
    k2 = _floor(n * critical_numbers(c, alpha2_override).alpha2)

    def est2(s: int) -> int:
        u = _floor((s - n_a1) / halving)
        return max(0, jet_space_dim(3, s) - c.q * comb(u + 1, 2))

    def bound(s: int) -> int:
        if s <= k1:
            return jet_space_dim(3, s)
        if s <= k2:
            return est2(s)
        return est2(k2) if k2 > k1 else jet_space_dim(3, k2)
    return bound


def discrete_budget_sum(
    c: Candidate,
    mode: Mode,
    n: int,
    mu: int = 3,
    alpha2_override: Optional[RatLike] = None,
) -> DiscreteSumReport:
    """Sum the per-level bounds for k = 0..floor(3np/q) and compare with the integral."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    mode = Mode(mode)
    g = build_profile(c, mode, mu, alpha2_override)
    bound = front_bound(c, mode, n, alpha2_override)

    r = c.ratio()
    k3 = _floor(2 * n * r)
    k_end = _floor(3 * n * r)
    top = _floor(mu * 2 * n * r)
    total = 0
    for k in range(k_end + 1):
        if k <= k3:
            total += bound(k)
        else:
            s = top - (mu - 1) * k
            if s >= 0:
                total += bound(s)

    exact = Fraction(total, n**3)
    integral = total_budget(g)
    notes = ()
    if mode is Mode.LARGE_Q:
        notes = ("plateau uses the frozen level-n*alpha2 bound without the auxiliary twist r",)
    return DiscreteSumReport(c, mode, n, total, exact, integral, abs(exact - integral), notes)


def convergence_table(c: Candidate, mode: Mode, ns: list[int], mu: int = 3) -> list[DiscreteSumReport]:
    return [discrete_budget_sum(c, mode, n, mu) for n in ns]


def scaled_gaps(reports: list[DiscreteSumReport], power: int = 1) -> list[Fraction]:
    """n**power * gap for each report."""
    return [r.n**power * r.gap for r in reports]


def doubling_sequence(start: int, count: int) -> list[int]:
    return [start * 2**i for i in range(count)]

