from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantorapprox import (AffineSource, InputError, MissingDigitSet, RealEnclosure,
                          SqrtSource, cf_prefix_interval, continued_fraction_expand,
                          convergents_from_quotients, golden_ratio_source,
                          irrationality_exponent_estimate, legendre_is_convergent,
                          prefix_interval_disjoint_from, build_sparse_number,
                          PowerRule, FactorialRule, LogRatioSource)
from cantorapprox.enclosures import as_enclosure, iv_abs, iv_exact, iv_sub

K = MissingDigitSet.middle_thirds()


def _sqrt_minus(d, sub):
    return RealEnclosure.from_source(AffineSource(SqrtSource(F(d)), add=F(-sub)))


def twenty_test_numbers():
    """Mixed rationals, quadratic irrationals, the set exponent, and sparse numbers."""
    rationals = [F(2, 27), F(13, 29), F(5, 7), F(355, 1130), F(17, 23), F(89, 144),
                 F(101, 257), F(3, 1000)]
    quadratics = [RealEnclosure.from_source(golden_ratio_source()),
                  _sqrt_minus(2, 1), _sqrt_minus(3, 1), _sqrt_minus(5, 2),
                  _sqrt_minus(7, 2), _sqrt_minus(10, 3)]
    gamma = RealEnclosure.from_source(LogRatioSource(F(2), F(3)))
    sparse = [build_sparse_number(3, 2, PowerRule(F(3)), 4),
              build_sparse_number(3, 2, PowerRule(F(5, 2)), 5),
              build_sparse_number(3, 2, PowerRule(F(11, 5)), 5),
              build_sparse_number(3, 2, PowerRule(F(3), F(1, 2)), 4),
              build_sparse_number(3, 2, FactorialRule(), 5)]
    return rationals + quadratics + [gamma] + sparse


def test_euclidean_examples():
    cf = continued_fraction_expand(F(2, 27), 10)
    assert cf.quotients == (13, 2)
    assert cf.exact
    assert cf.convergents == ((1, 13), (2, 27))


def test_golden_ratio_prefix():
    cf = continued_fraction_expand(RealEnclosure.from_source(golden_ratio_source()), 30)
    assert cf.quotients == (1,) * 30
    assert not cf.exhausted


def test_rejects_out_of_range():
    with pytest.raises(InputError):
        continued_fraction_expand(F(3, 2), 5)
    with pytest.raises(InputError):
        continued_fraction_expand(F(0), 5)


def _diff_interval(x, target):
    if hasattr(x, "enclosure"):
        x = x.enclosure()
    enc = as_enclosure(x) if isinstance(x, F) else x
    return enc, target


def _assert_strictly_between(x, lower, upper, target):
    """Certify lower < |x - target| < upper with refinement."""
    enc, target = _diff_interval(x, target)
    for _ in range(20):
        diff = iv_abs(iv_sub(enc.as_iv(), iv_exact(target)))
        if diff[0] > lower and diff[1] < upper:
            return
        if diff[1] <= lower or diff[0] >= upper:
            raise AssertionError(f"sandwich failed: {diff} vs ({lower}, {upper})")
        enc = enc.refine()
    raise AssertionError("could not certify the sandwich")


def test_cf_invariants_on_twenty_numbers():
    for x in twenty_test_numbers():
        cf = continued_fraction_expand(x, 18)
        convs = cf.convergents
        assert len(convs) >= 2
        # recurrence and determinant
        p_prev, q_prev = 1, 0
        p_cur, q_cur = 0, 1
        for a, (p, q) in zip(cf.quotients, convs):
            assert a >= 1
            p_cur, p_prev = a * p_cur + p_prev, p_cur
            q_cur, q_prev = a * q_cur + q_prev, q_cur
            assert (p, q) == (p_cur, q_cur)
        for (p0, q0), (p1, q1) in zip(convs, convs[1:]):
            assert q1 * p0 - p1 * q0 in (-1, 1)
        # strictly increasing denominators from the second convergent on
        qs = [q for _, q in convs]
        assert all(a < b for a, b in zip(qs[1:], qs[2:]))
        # sandwich and alternating sides (final convergent of a rational excluded)
        limit = len(convs) - 1 if cf.exact else len(convs) - 1
        for k in range(limit):
            p, q = convs[k]
            q_next = convs[k + 1][1]
            if cf.exact and k == len(convs) - 2:
                # the penultimate convergent of a rational attains the bound
                x_val = x if isinstance(x, F) else None
                if x_val is not None:
                    assert abs(x_val - F(p, q)) == F(1, q * q_next)
                continue
            _assert_strictly_between(x, F(1, q * (q + q_next)), F(1, q * q_next),
                                     F(p, q))


def _signed_side(x, target):
    enc, target = _diff_interval(x, target)
    for _ in range(20):
        lo, hi = iv_sub(enc.as_iv(), iv_exact(target))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        enc = enc.refine()
    raise AssertionError("side undecided")


def test_alternating_sides():
    for x in [RealEnclosure.from_source(golden_ratio_source()),
              build_sparse_number(3, 2, PowerRule(F(3)), 4),
              _sqrt_minus(2, 1)]:
        cf = continued_fraction_expand(x, 12)
        sides = [_signed_side(x, F(p, q)) for p, q in cf.convergents]
        assert all(a == -b for a, b in zip(sides, sides[1:]))


def test_legendre_examples():
    xi = build_sparse_number(3, 2, PowerRule(F(3)), 5)
    cf = continued_fraction_expand(xi, 30)
    assert legendre_is_convergent(2, 27, xi, cf) == "yes"
    assert legendre_is_convergent(1, 2, F(4999, 10000)) == "yes"
    assert legendre_is_convergent(1, 3, F(1, 2)) == "not_implied"
    with pytest.raises(InputError):
        legendre_is_convergent(2, 4, F(1, 2))


def test_legendre_certified_appear_in_convergents():
    for rule, terms in [(PowerRule(F(3)), 5), (PowerRule(F(11, 5)), 6)]:
        xi = build_sparse_number(3, 2, rule, terms)
        cf = continued_fraction_expand(xi, 120)
        qs = {q for _, q in cf.convergents}
        for s in range(1, terms):
            p, q = xi.truncation(s)
            if legendre_is_convergent(p, q, xi) == "yes":
                assert q in qs and (p, q) in cf.convergents


def test_intermediate_convergent_growth():
    # the convergent q* following each q_s satisfies
    # (1/10) q_s^(tau-1) < q* < (3^tau / 2) q_s^(tau-1) for tau = 3
    xi = build_sparse_number(3, 2, PowerRule(F(3)), 5)
    cf = continued_fraction_expand(xi, 60)
    qs_list = [q for _, q in cf.convergents]
    for s in range(1, 5):
        q_s = 3 ** xi.exponent(s)
        idx = qs_list.index(q_s)
        q_star = qs_list[idx + 1]
        assert 10 * q_star > q_s ** 2
        assert 2 * q_star < 27 * q_s ** 2


def test_exponent_estimate_golden():
    cf = continued_fraction_expand(RealEnclosure.from_source(golden_ratio_source()), 30)
    est = irrationality_exponent_estimate(cf)
    # bounded quotients: the max log-ratio comes from the smallest usable pair
    # (q=2 -> q=3), so the finite-window estimate is 1 + log3/log2 = 2.5849...
    assert F(258, 100) < est.lo <= est.hi < F(259, 100)
    assert est.lo >= 2  # Dirichlet floor


def test_exponent_estimate_dirichlet_floor():
    for x in twenty_test_numbers()[:6]:
        cf = continued_fraction_expand(x, 12)
        if len(cf.convergents) < 3:
            continue
        est = irrationality_exponent_estimate(cf)
        assert est.hi >= est.lo >= 2


def test_exponent_estimate_xi3():
    xi = build_sparse_number(3, 2, PowerRule(F(3)), 5)
    cf = continued_fraction_expand(xi, 40)
    est = irrationality_exponent_estimate(cf, min_denominator=50)
    assert F(29, 10) <= est.lo <= est.hi <= F(31, 10)


def test_exponent_estimate_xi_band():
    xi = build_sparse_number(3, 2, PowerRule(F(11, 5)), 6)
    cf = continued_fraction_expand(xi, 120)
    est = irrationality_exponent_estimate(cf, min_denominator=50)
    assert F(21, 10) <= est.lo <= est.hi <= F(44, 15)


def test_factorial_estimate_grows():
    # Liouville-type behaviour: the estimate grows with the window
    xi = build_sparse_number(3, 2, FactorialRule(), 6)
    cf_short = continued_fraction_expand(xi, 10)
    cf_long = continued_fraction_expand(xi, 40)
    e1 = irrationality_exponent_estimate(cf_short, min_denominator=3)
    e2 = irrationality_exponent_estimate(cf_long, min_denominator=3)
    assert e2.hi > e1.hi


def test_prefix_interval_examples():
    pi = cf_prefix_interval([1, 1])
    assert (pi.lo, pi.hi) == (F(1, 2), F(2, 3))
    assert pi.lo_closed and not pi.hi_closed
    assert prefix_interval_disjoint_from(pi, K, 2)
    pi2 = cf_prefix_interval([2])
    assert (pi2.lo, pi2.hi) == (F(1, 3), F(1, 2))
    assert not pi2.lo_closed and pi2.hi_closed
    assert prefix_interval_disjoint_from(pi2, K, 1)


def test_prefix_interval_quadratic_survey_rows():
    # [n,n] for n = 1..6: verdicts at the first conclusive depth
    expected_first_depth = {1: 1, 2: 1, 3: None, 4: 4, 5: 2, 6: 2}
    for n, first in expected_first_depth.items():
        pi = cf_prefix_interval([n, n])
        depths = [d for d in range(1, 7) if prefix_interval_disjoint_from(pi, K, d)]
        assert (depths[0] if depths else None) == first


def test_prefix_interval_membership_consistency():
    # the anchored endpoint belongs to the interval: if the set contains it,
    # the interval cannot be disjoint
    from cantorapprox import membership
    pi = cf_prefix_interval([3])  # (1/4, 1/3], and 1/4 = 0.0202... is in K
    assert (pi.lo, pi.hi) == (F(1, 4), F(1, 3))
    assert membership(F(1, 3), K).is_in
    assert not prefix_interval_disjoint_from(pi, K, 6)


@given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=7))
@settings(max_examples=60, deadline=None)
def test_prefix_interval_contains_its_numbers(quotients):
    pi = cf_prefix_interval(quotients)
    # the number with exactly these quotients (rational) sits at the closed end
    p, q = convergents_from_quotients(quotients)[-1]
    x = F(p, q)
    assert pi.lo <= x <= pi.hi
    # extending the prefix stays inside
    ext = cf_prefix_interval(list(quotients) + [2])
    assert pi.lo <= ext.lo and ext.hi <= pi.hi
