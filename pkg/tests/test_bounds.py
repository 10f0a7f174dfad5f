"""Majorant catalogue, window-count majorants and the ratio experiments."""

import math
import random
from fractions import Fraction

import pytest

from sqsieve.bounds import (
    BoundReport,
    ExperimentBudgetError,
    catalogue_names,
    critical_case_bound,
    dyadic_pair_count,
    majorant,
    p_alpha_combined,
    p_alpha_experiment,
    p_alpha_majorant_first,
    p_alpha_majorant_second,
    ratio_experiment,
    simple_case_terms,
    smallz_majorant,
)
from sqsieve.farey import beta_grid
from sqsieve.seqsum import extremal_constant, farey_points


def first_by_hand(Q, d, r, eps):
    # independent transcription of the first window majorant
    slack = (Q / d) ** eps
    return Q**3 * d + slack * (
        Q * r**-0.5 + Q**0.5 + Q * (r * d) ** 0.5 + Q**1.5 * d**0.5
    )


def second_by_hand(Q, d, r, eps):
    slack = (Q / d) ** eps
    return slack * (
        Q**0.5 + Q * d**0.25 + Q**3 * d + r**0.5 + Q**1.5 * d**0.5 * r**0.25 + Q**2 * d * r
    )


def test_min_mix_worked_example():
    # Q = 16, N = 4096: both mixed terms equal 16384, total 24576
    assert majorant("min_mix", 16, 4096, eps=0.0) == pytest.approx(24576.0)


def test_catalogue_complete_and_positive():
    names = catalogue_names()
    assert len(names) == 8
    for name in names:
        assert majorant(name, 3, 50) > 0


def test_q2_plus_n_at_Q1():
    for N in (1, 7, 100):
        assert majorant("q2_plus_n", 1, N) == 1 + N


def test_min_mix_below_rootn_form_pointwise():
    for Q in (1, 2, 3, 5, 8, 16, 32):
        for N in (1, 10, 100, 1000, 10000):
            assert majorant("min_mix", Q, N, 0.0) <= majorant(
                "q3_n_rootnq2", Q, N, 0.0
            ) + 1e-9


def test_conjecture_matches_min_mix_at_crossover():
    # Q = m^2, N = m^5 puts Q exactly at N^(2/5): the min picks N sqrt(Q) = Q^3,
    # so the min_mix form is within a factor 2 of the conjectured shape
    for m in (2, 3, 4):
        Q, N = m**2, m**5
        assert min(N * math.sqrt(Q), math.sqrt(N) * Q**2) == pytest.approx(float(Q**3))
        ratio = majorant("min_mix", Q, N, 0.0) / majorant("conj_q3_n", Q, N, 0.0)
        assert ratio <= 2.0 + 1e-12


def test_piecewise_branches():
    # Q = 2: N = 6 has Q^12 <= N^5, N = 5 does not
    assert majorant("piecewise_q35", 2, 6, 0.0) == pytest.approx(2**0.6 * 6)
    assert majorant("piecewise_q35", 2, 5, 0.0) == pytest.approx(8.0)


def test_log_mixed_recompute():
    Q, N, eps = 3, 100, 0.05
    want = math.log(6.0) * (27 + (100 * math.sqrt(3) + 10 * 9) * 100**eps)
    assert majorant("log_mixed", Q, N, eps) == pytest.approx(want, rel=1e-12)


def test_majorant_rejects():
    with pytest.raises(ValueError):
        majorant("no_such_bound", 2, 2)
    with pytest.raises(ValueError):
        majorant("min_mix", 0, 5)
    with pytest.raises(ValueError):
        majorant("min_mix", 2, 5, eps=-0.1)


def test_window_majorants_match_hand_formulas():
    rng = random.Random(11)
    for _ in range(50):
        Q = rng.randint(1, 20)
        d = Fraction(1, 2 ** rng.randint(1, 12))
        r_top = math.isqrt(d.denominator)
        r = rng.randint(1, r_top)
        eps = rng.choice([0.0, 0.05, 0.3])
        got1 = p_alpha_majorant_first(Q, d, r, eps)
        got2 = p_alpha_majorant_second(Q, d, r, eps)
        assert got1 == pytest.approx(first_by_hand(Q, float(d), r, eps), rel=1e-12)
        assert got2 == pytest.approx(second_by_hand(Q, float(d), r, eps), rel=1e-12)


def test_window_majorant_first_at_Q1():
    d = Fraction(1, 64)
    for r in (1, 2, 5, 8):
        want = float(d) + (r**-0.5 + 1 + (r * float(d)) ** 0.5 + float(d) ** 0.5)
        assert p_alpha_majorant_first(1, d, r, 0.0) == pytest.approx(want)


def test_large_r_term_below_sqrtQ():
    # once r > Q^2 the Q/sqrt(r) piece drops below sqrt(Q)
    Q, d = 2, Fraction(1, 1024)
    for r in (5, 9, 20):
        assert Q / math.sqrt(r) < math.sqrt(Q)
        assert p_alpha_majorant_first(Q, d, r, 0.0) == pytest.approx(
            first_by_hand(Q, float(d), r, 0.0)
        )


def test_combined_dispatch_boundary():
    d = Fraction(1, 64)
    lo, _ = p_alpha_combined(3, d, 3, 0.05)
    hi, _ = p_alpha_combined(3, d, 4, 0.05)
    assert lo == pytest.approx(p_alpha_majorant_second(3, d, 3, 0.05))
    assert hi == pytest.approx(p_alpha_majorant_first(3, d, 4, 0.05))


def test_combined_numeric_cell():
    Q, d, r = 16, Fraction(1, 4096), 3
    dispatch, combined = p_alpha_combined(Q, d, r, 0.0)
    df = float(d)
    assert dispatch == pytest.approx(second_by_hand(Q, df, r, 0.0), rel=1e-12)
    want = Q**3 * df + Q**1.75 * df**0.5 + Q * df**0.25 + Q**0.5
    assert combined == pytest.approx(want, rel=1e-12)


def test_dispatch_within_twice_combined_on_grid():
    for Q in range(1, 9):
        for d in (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64), Fraction(1, 256)):
            for r in range(1, math.isqrt(d.denominator) + 1):
                dispatch, combined = p_alpha_combined(Q, d, r)
                assert dispatch <= 2.0 * combined * (1 + 1e-12)


def test_combined_precondition():
    with pytest.raises(ValueError):
        p_alpha_combined(2, Fraction(1, 4), 3)


def test_smallz_majorant_value():
    # Q0 = 4: 1 + 4 * (1/16) * 3 + 8 * (1/16) = 2.25
    assert smallz_majorant(2, Fraction(1, 16), 3, 0.0) == pytest.approx(2.25)
    assert smallz_majorant(2, Fraction(1, 16), 3, 0.5) == pytest.approx(2.25 * 4.0)


def test_critical_case_bound_value():
    got = critical_case_bound(2, Fraction(1, 16), 4, 0.0)
    assert got == pytest.approx(math.sqrt(2) + 1.0 + 2.0)


def test_simple_case_terms_values():
    terms = simple_case_terms(2, Fraction(1, 64), 4, Fraction(1, 8), eps=0.0)
    # Q0 = 4, default delta = Q0 Delta / z = 0.5
    assert terms["j0_l0"] == pytest.approx(0.5 * 0.125 * 2.0)
    assert terms["jnz_l0"] == pytest.approx(0.25 * 0.5)
    assert terms["opposite_sign"] == pytest.approx(0.0625 + 2.0)
    assert terms["total"] == pytest.approx(2.0 + 0.125 + 0.125)


def test_simple_case_terms_delta_range():
    simple_case_terms(2, Fraction(1, 64), 4, Fraction(1, 8), delta=2.0)
    with pytest.raises(ValueError):
        simple_case_terms(2, Fraction(1, 64), 4, Fraction(1, 8), delta=5.0)
    with pytest.raises(ValueError):
        simple_case_terms(2, Fraction(1, 64), 4, Fraction(1, 8), delta=0.25)
    with pytest.raises(ValueError):
        simple_case_terms(2, Fraction(1, 64), 4, Fraction(-1, 8))


def test_bound_report_validation():
    BoundReport(1, 1, 2.0, {"m": 4.0}, {"m": 0.5}, 0.05)
    with pytest.raises(ValueError):
        BoundReport(1, 1, 2.0, {"m": 0.0}, {"m": 0.5}, 0.05)
    with pytest.raises(ValueError):
        BoundReport(1, 1, 2.0, {"m": 4.0}, {"m": math.inf}, 0.05)
    with pytest.raises(ValueError):
        BoundReport(0, 1, 2.0, {"m": 4.0}, {"m": 0.5}, 0.05)


def test_dyadic_pair_count_matches_point_sets():
    for Q in (1, 2, 3, 5, 8):
        assert dyadic_pair_count(Q) == len(farey_points(Q, dyadic=True))


def test_ratio_experiment_smallest_cell():
    (rep,) = ratio_experiment([1], [1])
    # two points 1/4 and 3/4 with one term each: Gram [[1,-1],[-1,1]]
    assert rep.measured == pytest.approx(2.0, abs=1e-8)
    assert rep.ratios["q2_plus_n"] == pytest.approx(1.0, abs=1e-8)
    assert all(v <= 10.0 for v in rep.ratios.values())


def test_ratio_experiment_mid_cell():
    (rep,) = ratio_experiment([4], [256])
    assert rep.measured >= 256.0 - 1e-6
    assert rep.ratios["min_mix"] <= 10.0
    assert rep.ratios["q3_n_rootnq2"] <= 10.0


def test_ratio_experiment_monotone_in_N():
    reports = ratio_experiment([2], [16, 64, 256])
    vals = [rep.measured for rep in reports]
    assert vals == sorted(vals)
    # threaded run returns the same cells in the same order
    threaded = ratio_experiment([2], [16, 64, 256], threads=3)
    for a, b in zip(reports, threaded):
        assert (a.Q, a.N) == (b.Q, b.N)
        assert a.measured == pytest.approx(b.measured, rel=1e-9)


def test_ratio_experiment_budget_refusal():
    with pytest.raises(ExperimentBudgetError) as info:
        ratio_experiment([32], [8192], max_cost=1e6)
    assert info.value.estimated_cost > info.value.budget
    with pytest.raises(ValueError):
        ratio_experiment([33], [16])
    with pytest.raises(ValueError):
        ratio_experiment([2], [9000])


def test_p_alpha_experiment_full_window():
    # Delta = 1/2 collapses the grid to the single point 1/2 and the window
    # covers the whole circle, so the count is every dyadic pair
    (rep,) = p_alpha_experiment([2], [Fraction(1, 2)])
    assert rep.n_beta == 1
    assert rep.max_count == dyadic_pair_count(2)
    assert rep.n_smallz == 1
    assert rep.worst_beta == Fraction(1, 2)


def test_p_alpha_experiment_mid_grid():
    (rep,) = p_alpha_experiment([8], [Fraction(1, 256)])
    assert rep.n_beta == len(beta_grid(Fraction(1, 256)))
    assert rep.n_smallz > 0
    assert rep.max_ratio_dispatch <= 10.0
    assert rep.max_ratio_combined <= 10.0
    assert rep.max_ratio_first <= 10.0
    assert rep.max_ratio_second <= 10.0
    assert rep.max_ratio_smallz <= 10.0
    assert rep.max_count > 0


def test_extremal_constant_meets_classical_baseline():
    # degree-1 Farey points against the classical N + Q^2 - 1 threshold
    for Q, N in ((2, 16), (3, 32), (4, 64)):
        points = farey_points(Q, k=1)
        lam = extremal_constant(points, 0, N)
        assert lam <= Q * Q + N - 1 + 1e-6
