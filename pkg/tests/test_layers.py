from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorapprox import (ApproxFunction, DimensionFunction, HypothesisViolation,
                          InputError, MissingDigitSet, RatInterval, Scalar,
                          WindowConfig, borel_cantelli_ratio,
                          box_dimension_estimate, build_layer, layer_comparator,
                          layer_measure, natural_cover_tail, pairwise_measure,
                          quasi_independence_scan, series_classify, series_term,
                          truncate_psi)
from cantorapprox.layers import classify_pair_case, psi_value
from cantorapprox.enclosures import iv_div

from oracles import power_series_converges

K = MissingDigitSet.middle_thirds()
CFG = WindowConfig.unit(3)
PSI2 = ApproxFunction.power(2)


def test_truncate_examples():
    half = ApproxFunction.power(F(1, 2))
    t = truncate_psi(half, F(1, 2))
    assert psi_value(t, K, 1) == (F(1, 6), F(1, 6))  # min(1/6, 1/sqrt 3)
    sq = truncate_psi(ApproxFunction.power(2), F(1, 2))
    for n in range(1, 6):
        assert psi_value(sq, K, n) == (F(1, 9 ** n), F(1, 9 ** n))
    tab = truncate_psi(ApproxFunction.table({1: F(1), 2: F(1, 100)}), F(1, 2))
    assert psi_value(tab, K, 1) == (F(1, 6), F(1, 6))
    assert psi_value(tab, K, 2) == (F(1, 100), F(1, 100))


def test_truncate_rejects_nonpositive():
    with pytest.raises(InputError):
        truncate_psi(PSI2, 0)


def test_build_layer_examples():
    l1 = build_layer(K, PSI2, 1, CFG, coprime=True)
    assert l1.centers == (F(1, 3), F(2, 3))
    assert l1.radius == (F(1, 9), F(1, 9))
    assert l1.disjoint
    l1f = build_layer(K, PSI2, 1, CFG, coprime=False)
    assert l1f.centers == (F(0), F(1, 3), F(2, 3), F(1))
    l2 = build_layer(K, PSI2, 2, CFG, coprime=True)
    assert l2.centers == (F(1, 9), F(2, 9), F(7, 9), F(8, 9))
    assert l2.radius == (F(1, 81), F(1, 81))


def test_layer_window_clipping():
    cfg = WindowConfig.for_window(RatInterval.make(F(0), F(1, 2)), 3)
    layer = build_layer(K, PSI2, 2, cfg, coprime=True)
    assert layer.centers == (F(1, 9), F(2, 9))


def test_layer_measure_examples():
    assert layer_measure(build_layer(K, PSI2, 1, CFG, True)).value == F(1, 2)
    assert layer_measure(build_layer(K, PSI2, 2, CFG, True)).value == F(1, 4)
    assert layer_measure(build_layer(K, PSI2, 1, CFG, False)).value == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_layer_identity_and_comparator(n):
    mu = layer_measure(build_layer(K, PSI2, n, CFG, True)).value
    assert mu == F(1, 2 ** n)
    comp = layer_comparator(K, PSI2, n, F(1))
    assert comp == (mu, mu)


def test_disjointness_means_sum_of_ball_measures(unit_cfg):
    from cantorapprox.digitsets import measure_pair
    for n in (1, 2, 3, 4):
        layer = build_layer(K, PSI2, n, unit_cfg, True)
        assert layer.disjoint
        total = sum(measure_pair(K, lo, hi)
                    for lo, hi in layer.ball_pairs(layer.radius[0]))
        assert layer_measure(layer).value == total


def test_pairwise_examples():
    l1 = build_layer(K, PSI2, 1, CFG, True)
    l2 = build_layer(K, PSI2, 2, CFG, True)
    assert pairwise_measure(l1, l2).value == F(1, 8)
    assert pairwise_measure(l2, l2).value == layer_measure(l2).value
    tab = ApproxFunction.table({1: F(1, 100), 2: F(1, 200)})
    t1 = build_layer(K, tab, 1, CFG, True)
    t2 = build_layer(K, tab, 2, CFG, True)
    assert classify_pair_case(K, tab, 1, 2) == "i"
    assert pairwise_measure(t1, t2).value == 0


def test_pairwise_requires_shared_window():
    other = WindowConfig.for_window(RatInterval.make(0, F(1, 2)), 3)
    with pytest.raises(InputError):
        pairwise_measure(build_layer(K, PSI2, 1, CFG, True),
                         build_layer(K, PSI2, 2, other, True))


def test_scan_case_split_and_rho():
    rep = quasi_independence_scan(K, PSI2, CFG, 8)
    assert rep.window_measure == 1
    r12 = rep.row(1, 2)
    assert r12.rho == (F(1), F(1))
    for row in rep.rows:
        # case (i) iff 3^-n >= 2 psi(3^m), here iff n < 2m
        assert row.case == ("i" if row.n < 2 * row.m else "ii")
        if row.case == "i":
            assert row.mu_mn.value == 0
    assert rep.c_empirical == (F(1), F(1))


def test_scan_skips_null_layers():
    # a window inside the central gap has no surviving mass at small levels
    cfg = WindowConfig.for_window(RatInterval.make(F(17, 40), F(23, 40)), 3)
    rep = quasi_independence_scan(K, ApproxFunction.power(3), cfg, 4, m_min=2)
    assert rep.rows == ()
    assert len(rep.skipped) == 3


def test_series_corollary_pair():
    f = DimensionFunction.power(F(1, 3), gexp=1)  # f = r^(gamma/3)
    sv1 = series_classify(K, ApproxFunction.power(3), f, 50)
    assert sv1.verdict == "divergent" and sv1.prediction == "measure_full"
    assert [s for s in sv1.partial_sums] == [(F(n), F(n)) for n in range(1, 51)]
    psi_log = ApproxFunction.power_log(3, Scalar.of(6, -1))
    sv2 = series_classify(K, psi_log, f, 50)
    assert sv2.verdict == "convergent" and sv2.prediction == "measure_zero"
    # terms are exactly (n ln 3)^-2: compare against sum n^-2 scaled by 1/ln(3)^2
    sigma = sum(F(1, n * n) for n in range(1, 51))
    assert sv2.last[1] <= sigma  # ln 3 > 1
    assert sv2.last[1] < F(3, 2)


def test_series_geometric_example():
    f = DimensionFunction.power(1, gexp=1)  # f = r^gamma
    sv = series_classify(K, PSI2, f, 30)
    assert sv.verdict == "convergent"
    assert sv.last == (F(2 ** 30 - 1, 2 ** 30), F(2 ** 30 - 1, 2 ** 30))


def test_series_requires_witness():
    f = DimensionFunction.table({1: F(1, 2)}, monotonicity_witness=False)
    with pytest.raises(HypothesisViolation):
        series_classify(K, PSI2, f, 1)


def test_series_table_undetermined():
    f = DimensionFunction.table({1: F(1, 2), 2: F(1, 4)}, monotonicity_witness=True)
    sv = series_classify(K, ApproxFunction.table({1: F(1, 9), 2: F(1, 81)}), f, 2)
    assert sv.verdict == "undetermined" and sv.prediction == "not_applicable"


GRID_RATIONAL = [(F(s), F(t)) for s in (F(1, 2), F(3, 5), F(7, 10), F(2, 3), F(1))
                 for t in (F(1), F(3, 2), F(2), F(5, 2), F(3))]
GRID_GAMMA = [(F(w), F(t)) for w in (F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2))
              for t in (F(1), F(3, 2), F(2), F(5, 2), F(3))]


def test_series_grid_against_closed_form():
    # 25 rational-exponent points, decided by integer powers
    for s, tau in GRID_RATIONAL:
        sv = series_classify(K, ApproxFunction.power(tau), DimensionFunction.power(s), 3)
        expect = power_series_converges(s, tau, 3, 2)
        assert (sv.verdict == "convergent") == expect, (s, tau)
    # 25 gamma-multiple points incl. the boundary s*tau = gamma (divergent)
    for w, tau in GRID_GAMMA:
        f = DimensionFunction.power(w, gexp=1)
        sv = series_classify(K, ApproxFunction.power(tau), f, 3)
        assert (sv.verdict == "convergent") == (w * tau > 1), (w, tau)
        if w * tau == 1:
            assert sv.partial_sums[2] == (F(3), F(3))  # constant terms


def test_series_rational_gamma_set():
    # for J={0,3} base 4 the exponent is exactly 1/2: boundary is exact
    s4 = MissingDigitSet(4, (0, 3))
    sv = series_classify(s4, ApproxFunction.power(2), DimensionFunction.power(F(1, 4)), 10)
    assert sv.verdict == "divergent"  # s*tau = 1/2 = gamma exactly
    sv2 = series_classify(s4, ApproxFunction.power(2), DimensionFunction.power(F(1, 3)), 10)
    assert sv2.verdict == "convergent"


def test_tail_closed_form_and_monotone():
    f = DimensionFunction.power(1, gexp=1)
    values = []
    for n0 in range(1, 10):
        t = natural_cover_tail(K, PSI2, f, n0, 20)
        expect = F(4, 2 ** n0) - F(2, 2 ** 20)
        assert t.value == (expect, expect)
        assert t.series_verdict == "convergent"
        values.append(t.value[0])
    assert all(a > b for a, b in zip(values, values[1:]))


def test_tail_divergent_flag():
    f = DimensionFunction.power(F(1, 3), gexp=1)
    t = natural_cover_tail(K, ApproxFunction.power(3), f, 1, 10)
    assert t.series_verdict == "divergent"
    assert t.value == (F(20), F(20))  # 10 levels x count/mass product = 2 each


def test_tail_degenerate_single_term():
    f = DimensionFunction.power(1, gexp=1)
    t = natural_cover_tail(K, PSI2, f, 5, 5)
    assert t.value == (F(2, 2 ** 5), F(2, 2 ** 5))


def test_borel_cantelli_values():
    assert borel_cantelli_ratio(K, PSI2, CFG, 1).ratio == (F(1, 2), F(1, 2))
    rep = borel_cantelli_ratio(K, PSI2, CFG, 2)
    assert rep.ratio == (F(9, 16), F(9, 16))
    for q in range(1, 9):
        r = borel_cantelli_ratio(K, PSI2, CFG, q)
        assert r.ratio[1] <= r.union_measure <= 1


def test_borel_cantelli_null_error():
    cfg = WindowConfig.for_window(RatInterval.make(F(17, 40), F(23, 40)), 3)
    with pytest.raises(InputError):
        borel_cantelli_ratio(K, ApproxFunction.power(3), cfg, 2)


def test_box_dimension_examples():
    e22 = box_dimension_estimate(K, F(2), 2, coprime=True)
    assert (e22.count, e22.level) == (4, 4)
    # exact identity: log 4 / log 81 == gamma/2 since 4^2 == 2^4
    assert 4 ** 2 == 2 ** e22.level
    e13 = box_dimension_estimate(K, F(1), 3, coprime=False)
    assert (e13.count, e13.level) == (8, 3)
    e32 = box_dimension_estimate(K, F(3), 2, coprime=True)
    assert (e32.count, e32.level) == (4, 6)


def test_comparability_envelope_calibration():
    from cantorapprox.calibration import MU_RATIO_ENVELOPE
    for tau, (c_lo, c_hi) in MU_RATIO_ENVELOPE.items():
        psi = ApproxFunction.power(tau)
        for n in range(CFG.t0 + 1, 11):
            mu = layer_measure(build_layer(K, psi, n, CFG, True))
            comp = layer_comparator(K, psi, n, F(1))
            ratio = iv_div((mu.lo, mu.hi), comp)
            assert c_lo <= ratio[0] and ratio[1] <= c_hi, (tau, n)
            if tau in (F(2), F(3)):
                assert ratio == (F(1), F(1))


def test_quasi_independence_bounded_by_calibration():
    from cantorapprox.calibration import C_FIX
    for tau in (2, 3):
        rep = quasi_independence_scan(K, ApproxFunction.power(tau), CFG, 10)
        assert rep.c_empirical[1] <= C_FIX


def test_irrational_radius_bounds_mode():
    psi = ApproxFunction.power(F(3, 2))
    layer = build_layer(K, psi, 3, CFG, True)  # radius 3^(-4.5), irrational
    assert layer.radius[0] < layer.radius[1]
    mu = layer_measure(layer)
    # bounds may collapse when the measure is radius-insensitive on the
    # enclosure; they must stay ordered and bracket the inner-radius value
    assert mu.lo <= mu.hi
    from cantorapprox.digitsets import measure_union
    assert mu.lo == measure_union(K, layer.union_pairs(layer.radius[0]))


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
@settings(max_examples=25, deadline=None)
def test_pairwise_symmetric_bound(m, n):
    if m == n:
        return
    m, n = min(m, n), max(m, n)
    lm = build_layer(K, PSI2, m, CFG, True)
    ln_ = build_layer(K, PSI2, n, CFG, True)
    inter = pairwise_measure(lm, ln_).value
    assert inter <= min(layer_measure(lm).value, layer_measure(ln_).value)
