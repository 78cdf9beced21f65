"""Lower bound (3d+1)/(3d^2) for Seshadri constants at very general points, d >= 4.

Everything reduces to exact rational inequalities: the multiplicity-growth
criterion at alpha = 1 + 1/(3d), eps = (3d+1)/(3d^2), and the gap to the
1/(d-1) bound on proper subvarieties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import OutOfScopeError, PreconditionError
from .kernel import ExpBound, RatLike, exp_bounds, rat

CONTRADICTION = "CONTRADICTION_ESTABLISHED"
LIMIT_CEILING = Fraction(9, 10)
DEFAULT_D_MAX = 64
EXP_TERMS = 12


def f4_value(d: int, alpha: RatLike, eps: RatLike) -> Fraction:
    """alpha^d - (alpha - eps)^d, i.e. d! times the normalised jet budget up to level alpha."""
    alpha, eps = rat(alpha), rat(eps)
    if d < 1:
        raise PreconditionError(f"d must be >= 1, got {d}")
    if not 0 <= eps <= alpha:
        raise PreconditionError(f"need 0 <= eps <= alpha, got eps={eps}, alpha={alpha}")
    return alpha**d - (alpha - eps) ** d


def multiplicity_criterion(d: int, alpha: RatLike, eps: RatLike, degree_bound: RatLike = 1) -> bool:
    """True when the budget forces a divisor of multiplicity > alpha, i.e. m(A) > alpha."""
    degree_bound = rat(degree_bound)
    if degree_bound < 1:
        raise PreconditionError(f"degree_bound must be >= 1, got {degree_bound}")
    return f4_value(d, alpha, eps) < degree_bound


def critical_pair(d: int) -> tuple[Fraction, Fraction]:
    """(alpha, eps) = ((3d+1)/(3d), (3d+1)/(3d^2))."""
    return Fraction(3 * d + 1, 3 * d), Fraction(3 * d + 1, 3 * d * d)


@dataclass(frozen=True)
class LemmaRow:
    d: int
    f4: Fraction
    passed: bool


@dataclass(frozen=True)
class LimitRow:
    exp_third: ExpBound
    exp_minus_two_thirds: ExpBound
    upper_difference: Fraction
    ceiling: Fraction
    passed: bool


@dataclass(frozen=True)
class LemmaReport:
    d_min: int
    d_max: int
    rows: tuple[LemmaRow, ...]
    limit: LimitRow

    @property
    def all_passed(self) -> bool:
        return self.limit.passed and all(r.passed for r in self.rows)


def limit_row(terms: int = EXP_TERMS) -> LimitRow:
    """Certify e^{1/3} - e^{-2/3} < 9/10 from rational enclosures."""
    up = exp_bounds(Fraction(1, 3), terms)
    down = exp_bounds(Fraction(-2, 3), terms)
    diff = up.upper - down.lower
    return LimitRow(up, down, diff, LIMIT_CEILING, diff < LIMIT_CEILING)


def lemma_l2_check(d_min: int = 4, d_max: int = DEFAULT_D_MAX, degree_bound: RatLike = 1,
                   terms: int = EXP_TERMS) -> LemmaReport:
    if d_min < 4:
        raise OutOfScopeError(f"dimension must be >= 4, got d_min = {d_min}")
    if d_max < d_min:
        raise PreconditionError(f"empty range [{d_min}, {d_max}]")
    rows = []
    for d in range(d_min, d_max + 1):
        alpha, eps = critical_pair(d)
        v = f4_value(d, alpha, eps)
        rows.append(LemmaRow(d, v, v < rat(degree_bound)))
    return LemmaReport(d_min, d_max, tuple(rows), limit_row(terms))


@dataclass(frozen=True)
class Step:
    label: str
    statement: str
    lhs: Fraction
    relation: str
    rhs: Fraction
    holds: bool
    detail: dict = field(default_factory=dict)


_RELATIONS = {"<": Fraction.__lt__, "==": Fraction.__eq__, "<=": Fraction.__le__}


def _step(label, statement, lhs, relation, rhs, **detail) -> Step:
    lhs, rhs = rat(lhs), rat(rhs)
    return Step(label, statement, lhs, relation, rhs, _RELATIONS[relation](lhs, rhs), detail)


@dataclass(frozen=True)
class DimCertificate:
    d: int
    epsilon: Fraction
    alpha: Fraction
    f4: Fraction
    degree_bound: Fraction
    steps: tuple[Step, ...]
    verdict: str

    @property
    def established(self) -> bool:
        return self.verdict == CONTRADICTION

    @property
    def failed_step(self) -> Optional[str]:
        return None if self.established else self.verdict.split(":", 1)[1]


def theorem_main_certificate(d: int, degree_bound: RatLike = 1) -> DimCertificate:
    """Exact chain showing eps(eta, A) <= (3d+1)/(3d^2) is impossible in dimension d."""
    if d < 4:
        raise OutOfScopeError(f"dimension must be >= 4, got {d}")
    degree_bound = rat(degree_bound)
    alpha, eps = critical_pair(d)
    v = f4_value(d, alpha, eps)
    steps = (
        _step("f4_below_budget", "alpha^d - (alpha - eps)^d < A^d, hence m(A) > alpha", v, "<", degree_bound),
        _step(
            "eps_equals_alpha_over_d",
            "eps = alpha/d exactly, so m(A) > alpha gives eps < m(A)/d",
            eps, "==", alpha / d,
            strict_from="m(A) > alpha",
        ),
        _step(
            "gap_below_subvariety_bound",
            "(3d+1)/(3d^2) < 1/(d-1), leaving room for delta on a proper subvariety",
            eps, "<", Fraction(1, d - 1),
            reduced_lhs=Fraction((3 * d + 1) * (d - 1)),
            reduced_rhs=Fraction(3 * d * d),
            reduced_statement="3d^2 - 2d - 1 < 3d^2",
        ),
    )
    failed = next((s.label for s in steps if not s.holds), None)
    verdict = CONTRADICTION if failed is None else f"FAILED_AT:{failed}"
    return DimCertificate(d, eps, alpha, v, degree_bound, steps, verdict)
