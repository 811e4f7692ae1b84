import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxprod.errors import UnknownFunctionError
from maxprod.functions import (
    REGISTRY,
    abs_difference,
    get_function,
    max_scale_combine,
    phi_at,
)
from maxprod.moduli import classical_modulus

SAMPLES = np.concatenate([np.linspace(0, 20, 2001), [50.0, 1e3, 1e6]])


class TestRegistry:
    def test_e0(self):
        f = get_function("e0")
        assert np.all(f.eval(SAMPLES) == 1.0)
        assert f.lipschitz == 0.0
        assert f.modulus_upper(0.3) == 0.0

    def test_unbounded_entries(self):
        assert not get_function("e1").bounded
        assert not get_function("e2").bounded

    def test_ratio_metadata(self):
        f = get_function("ratio")
        assert (f.sup_bound, f.lipschitz) == (1.0, 1.0)
        assert f.modulus_upper(0.5) == pytest.approx(1 / 3)

    def test_vee1_metadata(self):
        f = get_function("vee1")
        assert f.modulus_upper(0.25) == 0.25
        assert f.modulus_upper(3.0) == 1.0

    def test_unknown_lists_ids(self):
        with pytest.raises(UnknownFunctionError) as err:
            get_function("sinc")
        for fid in REGISTRY:
            assert fid in str(err.value)

    @pytest.mark.parametrize("fid", sorted(REGISTRY))
    def test_nonnegative_and_bounded(self, fid):
        f = get_function(fid)
        vals = f.eval(SAMPLES)
        assert np.all(vals >= 0)
        if f.bounded:
            assert np.all(vals <= f.sup_bound)

    @pytest.mark.parametrize("fid", sorted(REGISTRY))
    def test_lipschitz(self, fid):
        f = get_function(fid)
        if f.lipschitz is None:
            return
        xs = np.linspace(0, 20, 20001)
        slopes = np.abs(np.diff(f.eval(xs))) / np.diff(xs)
        assert slopes.max() <= f.lipschitz * (1 + 1e-9)

    @pytest.mark.parametrize("fid", sorted(REGISTRY))
    def test_growth_envelope(self, fid):
        f = get_function(fid)
        c, p = f.growth
        assert np.all(f.eval(SAMPLES) <= c * (1 + SAMPLES) ** p * (1 + 1e-12))

    @pytest.mark.parametrize("fid", sorted(REGISTRY))
    def test_c0_rho0_proxy(self, fid):
        f = get_function(fid)
        if f.in_C0_rho0:
            assert f(1e6) / (1 + 1e12) < 1e-3 * f(0.0) + 1e-6

    @pytest.mark.parametrize("fid", [k for k, v in REGISTRY.items() if v.analytic_modulus is not None])
    @pytest.mark.parametrize("delta", [0.5, 0.1, 0.01])
    def test_analytic_modulus_brackets_grid(self, fid, delta):
        f = get_function(fid)
        est = classical_modulus(f, delta, 20.0, 4096)
        analytic = f.analytic_modulus(delta)
        assert est.lower <= analytic + 1e-15
        assert analytic <= est.lower + f.lipschitz * est.spacing + 1e-15


class TestPhi:
    def test_values(self):
        assert phi_at(0.0)(0.0) == 0.0
        assert phi_at(1.0)(3.0) == 2.0
        assert phi_at(0.6).lipschitz == 1.0
        assert not phi_at(0.6).bounded


class TestCombine:
    def test_constant(self):
        e0 = get_function("e0")
        assert np.all(max_scale_combine(e0, e0, 1, 1).eval(SAMPLES) == 1.0)

    def test_zero_weight_drops(self):
        f, g = get_function("bump"), get_function("e2")
        h = max_scale_combine(f, g, 1, 0)
        assert np.array_equal(h.eval(SAMPLES), f.eval(SAMPLES))

    def test_example(self):
        h = max_scale_combine(get_function("ratio"), get_function("expneg"), 2, 3)
        assert h(0.0) == 3.0
        assert h.sup_bound == 3.0

    @given(st.sampled_from(sorted(REGISTRY)), st.sampled_from(sorted(REGISTRY)),
           st.sampled_from([0.0, 0.5, 1.0, 2.0]), st.sampled_from([0.0, 0.5, 1.0, 2.0]))
    def test_pointwise_max(self, fid, gid, a, b):
        f, g = get_function(fid), get_function(gid)
        h = max_scale_combine(f, g, a, b)
        xs = SAMPLES[:2001]
        np.testing.assert_array_equal(h.eval(xs), np.maximum(a * f.eval(xs), b * g.eval(xs)))
        c, p = h.growth
        assert np.all(h.eval(xs) <= c * (1 + xs) ** p * (1 + 1e-12))

    def test_abs_difference(self):
        f, g = get_function("ratio"), get_function("expneg")
        d = abs_difference(f, g)
        np.testing.assert_array_equal(d.eval(SAMPLES), np.abs(f.eval(SAMPLES) - g.eval(SAMPLES)))
        assert math.isfinite(d.sup_bound)
