import math

import numpy as np
import pytest

from maxprod.errors import PreconditionError
from maxprod.functions import get_function
from maxprod.moduli import classical_modulus, rho0, weighted_modulus_rho0


def brute_weighted(f, delta, domain_max, points):
    """Double loop over the same grid, denominator at the left point."""
    xs = np.linspace(0.0, domain_max, points)
    s = xs[1] - xs[0]
    w = int(math.floor(delta / s * (1 + 1e-12)))
    ext = np.linspace(0.0, domain_max + w * s, points + w)
    v = f.eval(ext)
    best = 0.0
    for i in range(points):
        seg = np.abs(v[i + 1:i + w + 1] - v[i])
        if seg.size:
            best = max(best, seg.max() / (1 + ext[i] ** 2))
    return best


class TestClassical:
    def test_ratio_brackets(self):
        est = classical_modulus(get_function("ratio"), 0.5)
        assert est.lower <= 1 / 3 <= est.upper
        assert est.upper == pytest.approx(1 / 3)

    def test_lower_is_grid_max(self):
        f = get_function("bump")
        est = classical_modulus(f, 0.2, 10.0, 1001)
        xs = np.linspace(0, 10, 1001)
        v = f.eval(xs)
        w = int(math.floor(0.2 / est.spacing * (1 + 1e-12)))
        brute = max(np.ptp(v[i:i + w + 1]) for i in range(1001 - w))
        assert est.lower == pytest.approx(brute, abs=1e-15)

    def test_upper_from_lipschitz(self):
        est = classical_modulus(get_function("bump"), 0.2)
        assert est.lower <= est.upper

    def test_monotone_in_delta(self):
        f = get_function("expneg")
        lows = [classical_modulus(f, d).lower for d in (0.01, 0.1, 0.5, 1.0)]
        assert lows == sorted(lows)

    def test_refinement_nested(self):
        f = get_function("bump")
        coarse = classical_modulus(f, 0.25, 8.0, 257)
        fine = classical_modulus(f, 0.25, 8.0, 513)
        assert fine.lower >= coarse.lower - 1e-15

    def test_bad_delta(self):
        with pytest.raises(PreconditionError):
            classical_modulus(get_function("ratio"), 0.0)


class TestWeighted:
    def test_expneg_reference(self):
        est = weighted_modulus_rho0(get_function("expneg"), 0.1)
        assert est.lower <= -math.expm1(-0.1) <= est.upper

    @pytest.mark.parametrize("fid", ["ratio", "expneg", "vee1", "bump", "e1"])
    def test_matches_double_loop(self, fid):
        f = get_function(fid)
        est = weighted_modulus_rho0(f, 0.3, 12.0, 600)
        assert est.lower == pytest.approx(brute_weighted(f, 0.3, 12.0, 600), rel=1e-13)

    def test_bracket(self, bounded_f):
        est = weighted_modulus_rho0(bounded_f, 0.05)
        assert 0 <= est.lower <= est.upper

    def test_not_above_classical(self, bounded_f):
        w = weighted_modulus_rho0(bounded_f, 0.1)
        c = classical_modulus(bounded_f, 0.1, 50.0)
        assert w.lower <= c.lower + 1e-15

    def test_requires_weighted_class(self):
        with pytest.raises(PreconditionError):
            weighted_modulus_rho0(get_function("e2"), 0.1)

    def test_rho0(self):
        np.testing.assert_array_equal(rho0(np.array([0.0, 2.0])), [1.0, 5.0])
