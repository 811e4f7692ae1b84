import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from maxprod.errors import DomainError, PreconditionError
from maxprod.kernel import (
    LogWeight,
    interval_index,
    log_basis_weight,
    log_ratio_run,
    log_weight_array,
    m_term,
    weight_decay_start,
    weight_ratio_m,
)

from oracles import brute_argmax_weight, exact_ratio_m, mp_ratio_m


class TestLogWeight:
    def test_zero_is_minus_inf(self):
        assert LogWeight.from_value(0.0).log_value == -math.inf
        assert LogWeight(-math.inf).value == 0.0

    @given(st.floats(min_value=1e-300, max_value=1e300))
    def test_round_trip(self, w):
        lw = LogWeight.from_value(w)
        back = LogWeight.from_value(lw.value)
        assert abs(back.log_value - lw.log_value) <= 1e-13 * max(1.0, abs(lw.log_value))

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            LogWeight.from_value(-1.0)


class TestLogBasisWeight:
    def test_k0_is_power(self):
        assert log_basis_weight(3, 0, 1.0).value == pytest.approx(0.125, rel=1e-15)

    def test_rational_value(self):
        # C(3,1) / 2^4
        assert log_basis_weight(3, 1, 1.0).value == pytest.approx(3 / 16, rel=1e-14)

    def test_origin(self):
        assert log_basis_weight(5, 2, 0.0).value == 0.0
        assert log_basis_weight(5, 0, 0.0).value == 1.0

    def test_negative_x(self):
        with pytest.raises(DomainError):
            log_basis_weight(3, 1, -0.1)

    def test_no_overflow_for_large_n(self):
        lw = log_basis_weight(400, 300, 0.75)
        assert math.isfinite(lw.log_value)
        assert 0 < lw.value < 1

    @pytest.mark.parametrize("n,k,x", [(7, 11, 0.3), (50, 40, 1.25), (2, 0, 3.0)])
    def test_matches_exact(self, n, k, x):
        from fractions import Fraction
        xf = Fraction(x)
        exact = math.comb(n + k - 1, k) * xf ** k / (1 + xf) ** (n + k)
        assert log_basis_weight(n, k, x).value == pytest.approx(float(exact), rel=1e-12)


class TestIntervalIndex:
    def test_examples(self):
        assert interval_index(3, 0.6) == 1
        assert interval_index(9, 0.0) == 0
        assert interval_index(5, 1.0) == 4

    def test_requires_n2(self):
        with pytest.raises(PreconditionError):
            interval_index(1, 0.5)


class TestWeightRatio:
    def test_diagonal(self):
        for n, j, x in [(3, 1, 0.7), (20, 7, 0.38), (64, 50, 0.8)]:
            assert weight_ratio_m(n, j, j, x) == 1.0

    def test_rational_example(self):
        # (6/3) * 0.375
        assert weight_ratio_m(3, 2, 1, 0.6) == pytest.approx(0.75, rel=1e-14)

    def test_origin_convention(self):
        assert weight_ratio_m(4, 3, 0, 0.0) == 0.0
        assert weight_ratio_m(4, 0, 0, 0.0) == 1.0

    def test_vector_matches_exact(self):
        n, j, x = 12, 4, 0.4
        ks = np.arange(0, 60)
        got = weight_ratio_m(n, ks, j, x)
        want = np.array([float(exact_ratio_m(n, int(k), j, x)) for k in ks])
        np.testing.assert_allclose(got, want, rtol=1e-12)

    @pytest.mark.parametrize("n,x", [(4, 0.6), (64, 0.8), (1024, 2.0), (300, 7.5)])
    def test_run_matches_mpmath(self, n, x):
        j = interval_index(n, x)
        k_max = j + 200
        got = np.exp(log_ratio_run(n, j, x, k_max))
        lo = max(0, j - 100)
        want = np.array([float(mp_ratio_m(n, k, j, x)) for k in range(lo, k_max + 1)])
        np.testing.assert_allclose(got[lo:], want, rtol=1e-12)


class TestMTerm:
    def test_plain_exact_hit(self):
        j = interval_index(5, 0.6)
        assert m_term("plain", 5, 3, j, 0.6).value == 0.0

    def test_upper_bar(self):
        # 35/1296 * (4/3 - 1/5)
        assert m_term("upper_bar", 4, 4, 0, 0.2).value == pytest.approx(119 / 3888, rel=1e-13)

    def test_lower_bar(self):
        # 5/70 * 2^3 * 3/4
        assert m_term("lower_bar", 5, 1, 4, 1.0).value == pytest.approx(3 / 7, rel=1e-13)

    def test_upper_bar_side_condition(self):
        with pytest.raises(PreconditionError, match="upper_bar"):
            m_term("upper_bar", 4, 1, 0, 0.2)

    def test_lower_bar_side_condition(self):
        with pytest.raises(PreconditionError, match="lower_bar"):
            m_term("lower_bar", 5, 4, 4, 1.0)

    def test_x_outside_interval(self):
        with pytest.raises(PreconditionError):
            m_term("plain", 5, 1, 0, 0.9)

    def test_unknown_kind(self):
        with pytest.raises(PreconditionError):
            m_term("sideways", 5, 1, 0, 0.1)


class TestWeightDecayStart:
    def test_small_x_clamps(self):
        assert weight_decay_start(4, 0.1) == 0

    def test_tie_point(self):
        # (n-1)x - 1 = 8 is an integer: b_9 = b_8, strict decay starts at 9
        assert weight_decay_start(10, 1.0) == 9
        n, x = 10, 1.0
        ratio = lambda k: (n + k) * x / ((k + 1) * (1 + x))
        assert ratio(8) == 1.0
        assert ratio(9) < 1.0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 80), st.floats(0.01, 6.0))
    def test_argmax_not_beyond(self, n, x):
        k_star = weight_decay_start(n, x)
        ks = np.arange(k_star + 200)
        logw = log_weight_array(n, ks, x)
        assert int(np.argmax(logw)) <= k_star
        assert np.all(np.diff(logw[k_star:]) < 0)

    def test_brute_force_argmax(self):
        for n, x in [(10, 1.0), (4, 0.1), (7, 2.3)]:
            assert brute_argmax_weight(n, x, weight_decay_start(n, x) + 200) <= weight_decay_start(n, x)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 64), st.integers(0, 50), st.floats(0.05, 0.95))
def test_argmax_is_interval_index(n, j, frac):
    x = (j + frac) / (n - 1)
    ks = np.arange(weight_decay_start(n, x) + 200)
    logw = log_weight_array(n, ks, x)
    assert logw.max() - logw[interval_index(n, x)] <= 1e-12


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 40), st.integers(0, 40), st.floats(0.0, 1.0))
def test_m_term_orderings_property(n, j, frac):
    x = (j + frac) / (n - 1)
    if x == 0:
        return
    for k in range(0, j + 4 * n):
        plain = m_term("plain", n, k, j, x).value
        if k * (n - 1) >= n * (j + 1):
            upper = m_term("upper_bar", n, k, j, x).value
            assert plain <= upper + 1e-12
            if k * (n - 2) >= n * (j + 1):
                assert upper <= 2 * plain + 1e-12
        if k * (n + 1) <= n * j:
            lower = m_term("lower_bar", n, k, j, x).value
            assert lower <= plain + 1e-12 <= 2 * lower + 2e-12


def test_run_tiny_x_no_cancellation():
    n, x = 70, 8.114522455733313e-19
    got = np.exp(log_ratio_run(n, 0, x, 5))
    want = np.array([float(mp_ratio_m(n, k, 0, x)) for k in range(6)])
    np.testing.assert_allclose(got, want, rtol=1e-13)
