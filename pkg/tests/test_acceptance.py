"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary."""

import random
from fractions import Fraction as F
from math import gcd

import sympy as sp

from jetcert.discrete import discrete_budget_sum
from jetcert.general import CONTRADICTION, lemma_l2_check, theorem_main_certificate
from jetcert.jets import oracle_check
from jetcert.kernel import Provenance, piecewise_integrate, quadratic_argmax_on_interval
from jetcert.threefold import (
    Candidate,
    Mode,
    Verdict,
    build_profile,
    certify_threefold,
    enumerate_candidates,
    est4_integral,
    large_q_bracket,
    sweep,
    total_budget,
)

TIGHTEST_BRACKET = F(3750, 3773)
EXCEPTIONAL = [(3, 8), (2, 5), (3, 7), (4, 9)]


def random_candidates(seed, count, q_min, q_max):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        q = rng.randint(q_min, q_max)
        p = rng.randint(1, (q - 1) // 2)
        if gcd(p, q) == 1:
            out.append((p, q))
    return out


def test_c01_budget_3_7(criterion):
    with criterion(1, "certify3(3,7) budget = 27/196 = (1/6)(567/686)", 1):
        cert = certify_threefold(Candidate(3, 7))
        assert cert.total_budget == F(27, 196) == F(1, 6) * F(567, 686)
        assert cert.verdict is Verdict.ELIMINATED
        assert any(n["text"] == "total budget equals (1/6)(567/686)" for n in cert.notes)


def test_c02_budget_4_9(criterion):
    with criterion(2, "certify3(4,9) budget = 112/729 = (1/6)(224/243)", 1):
        cert = certify_threefold(Candidate(4, 9))
        assert cert.total_budget == F(112, 729) == F(1, 6) * F(224, 243)
        assert cert.verdict is Verdict.ELIMINATED


def test_c03_four_candidates(criterion):
    with criterion(3, "enumerate_candidates(9) = {3/8, 2/5, 3/7, 4/9}", 1):
        assert [(c.p, c.q) for c in enumerate_candidates(9)] == EXCEPTIONAL


def test_c04_sweep_200(criterion):
    with criterion(4, "sweep3(200): all eliminated, bracket < 1 for q >= 10, tightest 3750/3773 at 5/11", 30):
        rep = sweep(200)
        assert rep.all_eliminated
        assert all(r.verdict is Verdict.ELIMINATED for r in rep.rows)
        for q in range(10, 201):
            for p in range(1, (q + 1) // 2):
                if gcd(p, q) == 1:
                    assert large_q_bracket(Candidate(p, q)) < 1
        assert rep.tightest_bracket == TIGHTEST_BRACKET
        assert (rep.tightest_bracket_at.p, rep.tightest_bracket_at.q) == (5, 11)


def test_c05_closed_form(criterion):
    with criterion(5, "simplified large-q closed form matches direct integration; (q-4)^2 form does not", 5):
        p, q = sp.symbols("p q", positive=True)
        a2, a3 = p / (q - 4), 2 * p / q
        expansion = sp.Rational(3, 2) * (a2**3 / 6 + (a3 - a2) * a2**2 / 2)
        corrected = sp.Rational(1, 6) * (3 * p**3 / (2 * (q - 4) ** 3) + 9 * p**3 * (q - 8) / (2 * q * (q - 4) ** 3))
        printed = sp.Rational(1, 6) * (3 * p**3 / (2 * (q - 4) ** 2) + 9 * p**3 * (q - 8) / (2 * q * (q - 4) ** 3))
        assert sp.simplify(expansion - corrected) == 0
        assert sp.simplify(expansion - printed) != 0
        for pp, qq in random_candidates(5, 20, 10, 300):
            direct = total_budget(build_profile(Candidate(pp, qq), Mode.LARGE_Q, defects=False))
            assert F(str(expansion.subs({p: pp, q: qq}))) == direct
            assert F(str(printed.subs({p: pp, q: qq}))) != direct


def test_c06_argmax(criterion):
    with criterion(6, "argmax of the est2 density is p/(q-4) for 20 random candidates", 1):
        for p, q in random_candidates(6, 20, 9, 400):
            g = build_profile(Candidate(p, q), Mode.LARGE_Q)
            est2 = g.pieces[g.provenance.index(Provenance.EST2)]
            arg, _ = quadratic_argmax_on_interval(est2, F(p, q), F(2 * p, q))
            assert arg == F(p, q - 4)


def test_c07_lemma(criterion):
    with criterion(7, "f4 < 1 for d in [4, 64]; d = 4 value exact; e^(1/3) - e^(-2/3) < 9/10", 10):
        rep = lemma_l2_check(4, 64)
        assert [r.d for r in rep.rows] == list(range(4, 65))
        assert all(r.f4 < 1 and r.passed for r in rep.rows)
        assert rep.rows[0].f4 == F(28561, 20736) - F(28561, 65536)
        assert rep.limit.passed and rep.limit.upper_difference < F(9, 10)


def test_c08_theorem(criterion):
    with criterion(8, "theorem_main_certificate(d) establishes the contradiction for d in [4, 64]", 5):
        for d in range(4, 65):
            cert = theorem_main_certificate(d)
            assert cert.verdict == CONTRADICTION
            step3 = cert.steps[2]
            assert step3.detail["reduced_lhs"] == 3 * d * d - 2 * d - 1
            assert step3.detail["reduced_rhs"] == 3 * d * d
            assert step3.detail["reduced_lhs"] < step3.detail["reduced_rhs"]


def test_c09_oracle(criterion):
    with criterion(9, "point_jet_dim = monomial oracle for d in {2,3,4}, k <= 30, m <= k+2", 30):
        rep = oracle_check((2, 3, 4), 30)
        assert rep.ok and rep.checked == 3 * sum(k + 3 for k in range(31))


def test_c10_convergence(criterion):
    with criterion(10, "n*gap bounded for (3,7) over n = 70..560; discrete verdicts agree at n = 560", 60):
        ns = [70, 140, 280, 560]
        reports = [discrete_budget_sum(Candidate(3, 7), Mode.SMALL_Q, n) for n in ns]
        assert all(r.n * r.gap < 1 for r in reports)
        assert all(a.gap > b.gap for a, b in zip(reports, reports[1:]))
        for p, q in EXCEPTIONAL:
            c = Candidate(p, q)
            cert = certify_threefold(c)
            r = discrete_budget_sum(c, cert.mode, 560)
            assert (r.exact_sum < cert.threshold) == (cert.verdict is Verdict.ELIMINATED)


def test_c11_reflection_halving(criterion):
    with criterion(11, "est4 integral is half the [0, alpha3] integral for 20 random candidates, both modes", 5):
        for p, q in random_candidates(11, 20, 9, 300):
            c = Candidate(p, q)
            for mode in Mode:
                g = build_profile(c, mode)
                assert est4_integral(g) == piecewise_integrate(g, 0, 2 * c.ratio()) / 2
