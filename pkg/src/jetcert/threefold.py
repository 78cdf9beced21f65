"""Elimination of candidate Seshadri ratios p/q < 1/2 on threefolds.

A candidate is a hypothetical curve of A-degree ``p`` with multiplicity ``q`` at
a very general point. The jet budget (the integral of a piecewise density that
bounds the normalised jet dimensions h^0_Y(P^2, O(tn))/n^2) is compared with the
Riemann-Roch budget A^3/6; a budget strictly below it eliminates the candidate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .errors import DegenerateCandidateError, InadmissibleModeError, OutOfScopeError, PreconditionError
from .jets import fat_point_defect_density
from .kernel import (
    T,
    PiecewiseDensity,
    Poly,
    Provenance,
    RatLike,
    affine_compose,
    piecewise_integrate,
    rat,
)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

# Hand-computed budgets for the two hardest small-q cases, stored as the
# unreduced fraction multiplying 1/6.
REFERENCE_SMALL_Q = {(3, 7): (567, 686), (4, 9): (224, 243)}

LARGE_Q_MIN_PROFILE = 9
LARGE_Q_MIN_VERDICT = 10


class Mode(str, enum.Enum):
    LARGE_Q = "LARGE_Q"
    SMALL_Q = "SMALL_Q"


class Verdict(str, enum.Enum):
    ELIMINATED = "ELIMINATED"
    NOT_ELIMINATED = "NOT_ELIMINATED"


@dataclass(frozen=True)
class Candidate:
    """Hypothetical Seshadri ratio p/q in dimension d; (p, q) is reduced on construction."""

    p: int
    q: int
    d: int = 3
    degree_bound: Fraction = Fraction(1)

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise PreconditionError(f"p and q must be positive, got ({self.p}, {self.q})")
        if self.d < 2:
            raise PreconditionError(f"dimension must be >= 2, got {self.d}")
        db = rat(self.degree_bound)
        if db < 1:
            raise PreconditionError(f"degree_bound must be >= 1, got {db}")
        g = gcd(self.p, self.q)
        object.__setattr__(self, "p", self.p // g)
        object.__setattr__(self, "q", self.q // g)
        object.__setattr__(self, "degree_bound", db)

    def ratio(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class CriticalNumbers:
    """Multiplicity thresholds per unit n.

    ``alpha2`` holds the worst-case value p/(q-4) as computed; when it reaches
    ``alpha3`` the middle range disappears (``collapsed``) and profiles use
    :attr:`alpha2_effective`.
    """

    alpha1: Fraction
    alpha2: Fraction
    alpha3: Fraction
    collapsed: bool

    @property
    def alpha2_effective(self) -> Fraction:
        return min(self.alpha2, self.alpha3)


def _check_threefold(c: Candidate) -> None:
    if c.d != 3:
        raise OutOfScopeError(f"threefold certifier needs d = 3, got d = {c.d}")
    if c.ratio() >= HALF:
        raise OutOfScopeError(f"candidate {c} has p/q >= 1/2")


def critical_numbers(c: Candidate, alpha2_override: Optional[RatLike] = None) -> CriticalNumbers:
    _check_threefold(c)
    a1 = c.ratio()
    a3 = 2 * a1
    if alpha2_override is not None:
        a2 = rat(alpha2_override)
        if not a1 < a2:
            raise PreconditionError(f"alpha2 override {a2} must exceed alpha1 = {a1}")
    else:
        if c.q <= 4:
            raise DegenerateCandidateError(f"worst-case alpha2 = p/(q-4) undefined for q = {c.q}")
        a2 = Fraction(c.p, c.q - 4)
    return CriticalNumbers(a1, a2, a3, collapsed=a2 >= a3)


def _reflect(front: list[tuple[Fraction, Fraction, Poly, Provenance]], alpha3: Fraction, end: Fraction, mu: int):
    """Pieces for the range (alpha3, end] at level s = mu*alpha3 - (mu-1)*t."""
    slope = -(mu - 1)
    offset = mu * alpha3

    def t_at(s: Fraction) -> Fraction:
        return (offset - s) / (mu - 1)

    out = []
    left = alpha3
    for lo, hi, P, _ in reversed(front):
        right = min(end, t_at(lo))
        if left < right:
            out.append((left, right, affine_compose(P, slope, offset), Provenance.EST4))
            left = right
    if left < end:
        # level has dropped below zero: no sections left
        out.append((left, end, Poly(), Provenance.EST4))
    return out


def _assemble(pieces) -> PiecewiseDensity:
    return PiecewiseDensity(
        [pieces[0][0]] + [hi for _, hi, _, _ in pieces],
        [P for _, _, P, _ in pieces],
        [prov for _, _, _, prov in pieces],
    )


def front_profile(
    c: Candidate,
    mode: Mode,
    alpha2_override: Optional[RatLike] = None,
    halving: int = 2,
    defects: bool = True,
) -> list[tuple[Fraction, Fraction, Poly, Provenance]]:
    """The profile on [0, alpha3] as (left, right, poly, provenance) tuples."""
    mode = Mode(mode)
    _check_threefold(c)
    a1 = c.ratio()
    a3 = 2 * a1
    est1 = T**2 * HALF
    if mode is Mode.SMALL_Q:
        point_defect = (T - a1) ** 2 * HALF if defects else Poly()
        return [(Fraction(0), a1, est1, Provenance.EST1), (a1, a3, est1 - point_defect, Provenance.F3)]

    if alpha2_override is None and c.q < LARGE_Q_MIN_PROFILE:
        raise InadmissibleModeError(f"LARGE_Q needs q >= {LARGE_Q_MIN_PROFILE}, got q = {c.q}")
    crit = critical_numbers(c, alpha2_override)
    if crit.collapsed:
        raise InadmissibleModeError(f"alpha2 = {crit.alpha2} >= alpha3 = {crit.alpha3}; LARGE_Q undefined")
    a2 = crit.alpha2
    if defects:
        # vanishing order along the tangent cone is (t - alpha1)/halving per unit n
        curve_defect = affine_compose(fat_point_defect_density(c.q), Fraction(1, halving), -a1 / halving)
    else:
        curve_defect = Poly()
    est2 = est1 - curve_defect
    plateau = Poly.const(est2(a2))
    return [
        (Fraction(0), a1, est1, Provenance.EST1),
        (a1, a2, est2, Provenance.EST2),
        (a2, a3, plateau, Provenance.EST3),
    ]


def build_profile(
    c: Candidate,
    mode: Mode,
    mu: int = 3,
    alpha2_override: Optional[RatLike] = None,
    halving: int = 2,
    defects: bool = True,
) -> PiecewiseDensity:
    """Jet-dimension density on [0, 3p/q] for the given counting regime.

    ``mu`` is the multiplicity of the swept surface along the curve; the range
    past alpha3 reuses the front profile at level mu*alpha3 - (mu-1)*t.
    ``defects=False`` drops the fat-point and point defects, giving the
    simplified bound.
    """
    if mu < 2:
        raise PreconditionError(f"mu must be >= 2, got {mu}")
    if halving < 1:
        raise PreconditionError(f"halving must be >= 1, got {halving}")
    front = front_profile(c, mode, alpha2_override, halving, defects)
    a3 = front[-1][1]
    back = _reflect(front, a3, 3 * c.ratio(), mu)
    return _assemble(front + back)


@dataclass(frozen=True)
class ProfileExport:
    candidate: Candidate
    mode: Mode
    mu: int
    profile: PiecewiseDensity


def total_budget(g: PiecewiseDensity) -> Fraction:
    lo, hi = g.domain
    return piecewise_integrate(g, lo, hi)


def est4_integral(g: PiecewiseDensity) -> Fraction:
    return sum(
        (piecewise_integrate(g, lo, hi) for (lo, hi), prov in zip(g.intervals(), g.provenance) if prov is Provenance.EST4),
        Fraction(0),
    )


def simplified_large_q_budget(crit: CriticalNumbers) -> Fraction:
    """(3/2)(a2^3/6 + (a3 - a2) a2^2/2): the large-q bound with both defect terms dropped."""
    a2, a3 = crit.alpha2, crit.alpha3
    return Fraction(3, 2) * (a2**3 / 6 + (a3 - a2) * a2**2 / 2)


def large_q_bracket(c: Candidate) -> Fraction:
    """Six times the simplified budget; the candidate falls when this is below A^3."""
    return 6 * simplified_large_q_budget(critical_numbers(c))


def corrected_closed_form(p: int, q: int) -> Fraction:
    """Closed form of the simplified budget in p and q."""
    return Fraction(1, 6) * (
        Fraction(3 * p**3, 2 * (q - 4) ** 3) + Fraction(9 * p**3 * (q - 8), 2 * q * (q - 4) ** 3)
    )


def printed_closed_form(p: int, q: int) -> Fraction:
    """The same expression with (q-4)^2 in the first denominator; kept to show it disagrees."""
    return Fraction(1, 6) * (
        Fraction(3 * p**3, 2 * (q - 4) ** 2) + Fraction(9 * p**3 * (q - 8), 2 * q * (q - 4) ** 3)
    )


def small_q_closed_form(ratio: RatLike) -> Fraction:
    return Fraction(7, 4) * rat(ratio) ** 3


@dataclass(frozen=True)
class ModeResult:
    mode: Mode
    profile: PiecewiseDensity
    total_budget: Fraction
    verdict: Verdict


@dataclass(frozen=True)
class ThreefoldCertificate:
    candidate: Candidate
    mode: Mode
    criticals: CriticalNumbers
    profile: PiecewiseDensity
    total_budget: Fraction
    threshold: Fraction
    verdict: Verdict
    notes: tuple[dict, ...] = ()
    alternatives: tuple[ModeResult, ...] = ()
    bracket: Optional[Fraction] = None
    mu: int = 3


def admissible_modes(c: Candidate) -> list[Mode]:
    modes = [Mode.SMALL_Q]
    if c.q >= LARGE_Q_MIN_VERDICT:
        modes.append(Mode.LARGE_Q)
    return modes


def certify_threefold(
    c: Candidate,
    mu: int = 3,
    alpha2_override: Optional[RatLike] = None,
    modes: Optional[list[Mode]] = None,
) -> ThreefoldCertificate:
    """Build every admissible profile, keep the smallest budget, compare with A^3/6."""
    _check_threefold(c)
    r = c.ratio()
    if not THIRD < r < HALF:
        raise OutOfScopeError(f"candidate {c} is outside (1/3, 1/2)")
    threshold = c.degree_bound / 6
    if modes is None:
        modes = admissible_modes(c)
    results = []
    for mode in modes:
        g = build_profile(c, mode, mu, alpha2_override if mode is Mode.LARGE_Q else None)
        budget = total_budget(g)
        results.append(ModeResult(Mode(mode), g, budget, Verdict.ELIMINATED if budget < threshold else Verdict.NOT_ELIMINATED))
    best = min(results, key=lambda m: m.total_budget)
    crit = critical_numbers(c, alpha2_override)

    notes: list[dict] = []
    sixfold = 6 * best.total_budget
    notes.append({"kind": "normalized_budget", "text": f"total budget = (1/6)({sixfold})", "value": sixfold})
    if best.mode is Mode.SMALL_Q and (c.p, c.q) in REFERENCE_SMALL_Q:
        num, den = REFERENCE_SMALL_Q[(c.p, c.q)]
        if Fraction(num, den) == sixfold:
            notes.append({
                "kind": "reference_match",
                "text": f"total budget equals (1/6)({num}/{den})",
                "value": Fraction(num, den),
            })
    if crit.collapsed:
        notes.append({
            "kind": "collapsed",
            "text": f"worst-case alpha2 = {crit.alpha2} >= alpha3 = {crit.alpha3}; the plateau range is empty",
        })

    bracket = None
    if any(m.mode is Mode.LARGE_Q for m in results) and not crit.collapsed:
        bracket = 6 * simplified_large_q_budget(crit)
        a1, a2, a3 = crit.alpha1, crit.alpha2, crit.alpha3
        front_defect = c.q * (a2 - a1) ** 3 / 24
        plateau_defect = (a3 - a2) * c.q * (a2 - a1) ** 2 / 8
        notes.append({
            "kind": "dropped_defects",
            "text": "simplified bound omits q(a2-a1)^3/24 and (a3-a2)q(a2-a1)^2/8, each counted 3/2 times",
            "value": Fraction(3, 2) * (front_defect + plateau_defect),
        })
        notes.append({"kind": "large_q_bracket", "text": f"6 x simplified bound = {bracket}", "value": bracket})
        if alpha2_override is None:
            printed = 6 * printed_closed_form(c.p, c.q)
            notes.append({
                "kind": "closed_form_discrepancy",
                "text": "closed form with (q-4)^2 in the first denominator disagrees with direct integration; "
                "(q-4)^3 agrees",
                "value": printed,
            })
    if len(results) > 1:
        notes.append({
            "kind": "alternatives",
            "text": ", ".join(f"{m.mode.value}: {m.total_budget} ({m.verdict.value})" for m in results),
        })

    return ThreefoldCertificate(
        candidate=c,
        mode=best.mode,
        criticals=crit,
        profile=best.profile,
        total_budget=best.total_budget,
        threshold=threshold,
        verdict=best.verdict,
        notes=tuple(notes),
        alternatives=tuple(results),
        bracket=bracket,
        mu=mu,
    )


def enumerate_candidates(q_max: int, degree_bound: RatLike = 1) -> list[Candidate]:
    """Reduced fractions 1/3 < p/q < 1/2 with q <= q_max, in increasing order."""
    if q_max < 2:
        raise PreconditionError(f"q_max must be >= 2, got {q_max}")
    out = [
        Candidate(p, q, 3, rat(degree_bound))
        for q in range(2, q_max + 1)
        for p in range(q // 3, (q + 1) // 2 + 1)
        if gcd(p, q) == 1 and THIRD < Fraction(p, q) < HALF
    ]
    return sorted(out, key=Candidate.ratio)


@dataclass(frozen=True)
class SweepRow:
    candidate: Candidate
    mode: Mode
    total_budget: Fraction
    verdict: Verdict
    bracket: Optional[Fraction]


@dataclass(frozen=True)
class SweepReport:
    q_max: int
    degree_bound: Fraction
    rows: tuple[SweepRow, ...]
    all_eliminated: bool
    tightest_bracket: Optional[Fraction]
    tightest_bracket_at: Optional[Candidate]
    tightest_ratio: Fraction = field(default=Fraction(0))
    tightest_ratio_at: Optional[Candidate] = None

    @property
    def brackets_below_bound(self) -> bool:
        return all(r.bracket < self.degree_bound for r in self.rows if r.bracket is not None)


def sweep(q_max: int, degree_bound: RatLike = 1, mu: int = 3) -> SweepReport:
    """Certify every candidate up to q_max.

    ``tightest_ratio`` is the largest budget/threshold over all candidates;
    ``tightest_bracket`` the largest large-q bracket.
    """
    if q_max < 9:
        raise PreconditionError(f"q_max must be >= 9, got {q_max}")
    rows = []
    for c in enumerate_candidates(q_max, degree_bound):
        cert = certify_threefold(c, mu)
        rows.append(SweepRow(c, cert.mode, cert.total_budget, cert.verdict, cert.bracket))
    with_bracket = [r for r in rows if r.bracket is not None]
    tight_b = max(with_bracket, key=lambda r: r.bracket, default=None)
    db = rat(degree_bound)
    tight_r = max(rows, key=lambda r: r.total_budget, default=None)
    return SweepReport(
        q_max=q_max,
        degree_bound=db,
        rows=tuple(rows),
        all_eliminated=all(r.verdict is Verdict.ELIMINATED for r in rows),
        tightest_bracket=tight_b.bracket if tight_b else None,
        tightest_bracket_at=tight_b.candidate if tight_b else None,
        tightest_ratio=tight_r.total_budget * 6 / db if tight_r else Fraction(0),
        tightest_ratio_at=tight_r.candidate if tight_r else None,
    )
