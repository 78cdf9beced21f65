from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jetcert.errors import OutOfScopeError, PreconditionError
from jetcert.general import (
    CONTRADICTION,
    critical_pair,
    f4_value,
    lemma_l2_check,
    multiplicity_criterion,
    theorem_main_certificate,
)

pos = st.fractions(min_value=F(1, 50), max_value=3, max_denominator=60)


def test_f4_examples():
    assert f4_value(5, F(7, 3), 0) == 0
    assert f4_value(1, F(7, 3), F(2, 3)) == F(2, 3)
    assert f4_value(4, F(13, 12), F(13, 48)) == F(28561, 20736) - F(28561, 65536)
    with pytest.raises(PreconditionError):
        f4_value(4, 1, 2)


def test_multiplicity_criterion_examples():
    assert multiplicity_criterion(4, F(13, 12), F(13, 48), 1)
    assert not multiplicity_criterion(3, F(11, 10), F(11, 10), 1)
    assert F(16, 15) ** 5 - F(64, 75) ** 5 < 1
    assert multiplicity_criterion(5, F(16, 15), F(16, 75), 1)


@given(st.integers(1, 8), pos, st.fractions(0, 1, max_denominator=40), st.fractions(0, 1, max_denominator=40))
def test_f4_increasing_in_eps(d, alpha, u, v):
    lo, hi = sorted([u, v])
    if lo < hi:
        assert f4_value(d, alpha, lo * alpha) < f4_value(d, alpha, hi * alpha)


@given(st.integers(1, 8), pos, st.fractions(0, 1, max_denominator=40), pos)
def test_f4_scaling(d, alpha, u, c):
    eps = u * alpha
    assert f4_value(d, c * alpha, c * eps) == c**d * f4_value(d, alpha, eps)


def test_lemma_range_and_limit():
    rep = lemma_l2_check(4, 64)
    assert rep.all_passed
    assert all(F(1, 2) < r.f4 < 1 for r in rep.rows)
    # f4 decreases towards the limit from above
    assert all(a.f4 > b.f4 for a, b in zip(rep.rows, rep.rows[1:]))
    assert rep.rows[-1].f4 > rep.limit.exp_third.lower - rep.limit.exp_minus_two_thirds.upper
    assert rep.limit.passed and rep.limit.upper_difference < F(9, 10)
    with pytest.raises(OutOfScopeError):
        lemma_l2_check(3, 10)


def test_certificate_d4_and_d10():
    cert = theorem_main_certificate(4)
    assert cert.verdict == CONTRADICTION and cert.epsilon == F(13, 48)
    assert [s.holds for s in cert.steps] == [True, True, True]
    assert theorem_main_certificate(10).epsilon == F(31, 300)


def test_failed_step_reported(monkeypatch):
    import jetcert.general as general

    monkeypatch.setattr(general, "f4_value", lambda d, a, e: F(2))
    cert = general.theorem_main_certificate(4)
    assert cert.verdict == "FAILED_AT:f4_below_budget" and cert.failed_step == "f4_below_budget"
    with pytest.raises(OutOfScopeError):
        theorem_main_certificate(3)


@pytest.mark.parametrize("d", range(2, 40))
def test_step3_identity(d):
    assert (3 * d + 1) * (d - 1) == 3 * d * d - 2 * d - 1 < 3 * d * d
    assert F(3 * d + 1, 3 * d * d) < F(1, d - 1)


@pytest.mark.parametrize("d", range(1, 50))
def test_bound_beats_one_over_d(d):
    alpha, eps = critical_pair(d)
    assert eps > F(1, d) and eps == alpha / d
