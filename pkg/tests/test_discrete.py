from fractions import Fraction as F
from math import ceil, comb

from jetcert.discrete import discrete_budget_sum, doubling_sequence, front_bound, scaled_gaps
from jetcert.threefold import Candidate, Mode


def hand_sum_2_5_n10():
    # k <= 4: all jets; 4 < k <= 8: vanish to order ceil(k - 5) at the tangent point;
    # 8 < k <= 12: level 24 - 2k
    def front(s):
        if s <= 4:
            return comb(s + 2, 2)
        m = max(0, ceil(s - 5))
        return comb(s + 2, 2) - comb(m + 1, 2)

    return sum(front(k) for k in range(9)) + sum(front(24 - 2 * k) for k in range(9, 13))


def test_hand_computed_sum_2_5():
    assert hand_sum_2_5_n10() == 204
    r = discrete_budget_sum(Candidate(2, 5), Mode.SMALL_Q, 10)
    assert r.integer_sum == 204 and r.exact_sum == F(204, 1000)
    assert r.integral == F(14, 125)


def test_large_q_front_bound_by_hand():
    # q = 11, p = 5, n = 77: n*alpha1 = 35, n*alpha2 = 55
    bound = front_bound(Candidate(5, 11), Mode.LARGE_Q, 77)
    assert bound(35) == comb(37, 2)
    assert bound(45) == comb(47, 2) - 11 * comb(5 + 1, 2)
    assert bound(60) == bound(55) == comb(57, 2) - 11 * comb(10 + 1, 2)


def test_converges_to_27_196():
    reports = [discrete_budget_sum(Candidate(3, 7), Mode.SMALL_Q, n) for n in doubling_sequence(70, 5)]
    gaps = [r.gap for r in reports]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert all(g < 1 for g in scaled_gaps(reports))
    assert reports[-1].integral == F(27, 196)


def test_large_q_converges():
    reports = [discrete_budget_sum(Candidate(5, 11), Mode.LARGE_Q, n) for n in doubling_sequence(77, 4)]
    assert all(a.gap > b.gap for a, b in zip(reports, reports[1:]))
    assert all(s < 1 for s in scaled_gaps(reports))
    assert reports[0].notes


def test_n_squared_gap_grows():
    # the error is first order in 1/n, so n^2 * gap is not bounded
    reports = [discrete_budget_sum(Candidate(3, 7), Mode.SMALL_Q, n) for n in doubling_sequence(70, 4)]
    sq = scaled_gaps(reports, 2)
    assert all(a < b for a, b in zip(sq, sq[1:]))
