import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marcz import (CoefficientSpec, LPolyParams, coefficient, coefficient_array,
                   kernel_cross_sum, l_poly, verify_kernel_bound)
from marcz.errors import (ConfigurationError, DegeneratePairError, DomainError,
                          OutOfWindowError)


class TestCoefficient:
    def test_power_evaluation(self):
        spec = CoefficientSpec(sigma=0.75)
        assert coefficient(spec, 16) == pytest.approx(0.125)

    def test_negative_index(self):
        spec = CoefficientSpec(sigma=1.0)
        assert coefficient(spec, -4) == pytest.approx(0.25)

    def test_center_value(self):
        spec = CoefficientSpec(sigma=0.6, scale=2.0, center_value=1.0)
        assert coefficient(spec, 0) == 1.0

    def test_out_of_window(self):
        spec = CoefficientSpec(sigma=0.75, window=10)
        with pytest.raises(OutOfWindowError):
            coefficient(spec, 11)

    def test_invalid_sigma(self):
        with pytest.raises(ConfigurationError):
            CoefficientSpec(sigma=0.5)
        with pytest.raises(ConfigurationError):
            CoefficientSpec(sigma=1.2)

    @given(st.integers(min_value=-100, max_value=100),
           st.floats(min_value=0.51, max_value=1.0))
    @settings(max_examples=50, deadline=None)
    def test_even_symmetry(self, l, sigma):
        spec = CoefficientSpec(sigma=sigma, window=100)
        assert coefficient(spec, l) == coefficient(spec, -l)

    def test_array_matches_scalar(self):
        spec = CoefficientSpec(sigma=0.8, window=50)
        arr = coefficient_array(spec)
        for l in (-50, -3, 0, 1, 50):
            assert arr[l + 50] == coefficient(spec, l)

    def test_sup_norm(self):
        spec = CoefficientSpec(sigma=0.7, scale=1.5, window=200)
        arr = coefficient_array(spec)
        l = np.arange(-200, 201, dtype=np.float64)
        vals = np.abs(l) ** spec.sigma * np.abs(arr)
        assert np.max(vals[l != 0]) == pytest.approx(spec.scale)


class TestLPoly:
    def test_power_branch(self):
        assert l_poly(LPolyParams(1, 0.75), 100.0) == pytest.approx(10.0)

    def test_log_branch(self):
        assert l_poly(LPolyParams(1, 1.0), math.e - 1.0) == pytest.approx(1.0)

    def test_constant_branch(self):
        assert l_poly(LPolyParams(2, 0.9), 50.0) == 1.0

    def test_negative_x(self):
        with pytest.raises(DomainError):
            l_poly(LPolyParams(1, 0.75), -1.0)

    @given(st.floats(min_value=2.0, max_value=1e3),
           st.floats(min_value=0.5, max_value=1.5))
    @settings(max_examples=50, deadline=None)
    def test_n2_below_n1(self, x, beta):
        # ordering holds on the tail x >= e-1 for decay exponents beta >= 1/2
        assert l_poly(LPolyParams(2, beta), x) <= l_poly(LPolyParams(1, beta), x) + 1e-12

    def test_nonincreasing_in_beta_first_branch(self):
        x = 7.0
        vals = [l_poly(LPolyParams(1, b), x) for b in (0.6, 0.7, 0.8, 0.9)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


class TestCrossSum:
    def test_adjacent_pair_brute_force(self):
        # independently recomputed dense sum over l in [-1e6, 1e6]
        assert kernel_cross_sum(1, 0, 2.0, 2.0, 10 ** 6) == pytest.approx(
            0.5797362673929054, abs=1e-9)

    def test_dominated_by_inner_term(self):
        assert kernel_cross_sum(2, 0, 10.0, 10.0, 100) == pytest.approx(
            1.0000338720417628, rel=1e-12)

    def test_degenerate_pair(self):
        with pytest.raises(DegeneratePairError):
            kernel_cross_sum(0, 0, 2.0, 2.0, 100)

    def test_radius_precondition(self):
        with pytest.raises(DomainError):
            kernel_cross_sum(10, 0, 2.0, 2.0, 15)

    def test_translation_invariance(self):
        a = kernel_cross_sum(3, 0, 1.5, 1.5, 5000)
        b = kernel_cross_sum(10, 7, 1.5, 1.5, 5000)
        assert a == pytest.approx(b, rel=1e-6)

    def test_monotone_in_radius(self):
        sums = [kernel_cross_sum(2, 0, 0.8, 0.8, r) for r in (100, 1000, 10000)]
        assert sums[0] < sums[1] < sums[2]

    def test_cauchy_tail_large_gamma(self):
        # increments shrink below 1e-8 past radius 1e5 once the tail exponent
        # sum is comfortably above 1 (gamma = 0.75 gives tail ~ r^(-1/2))
        a = kernel_cross_sum(2, 0, 0.75, 0.75, 10 ** 5)
        b = kernel_cross_sum(2, 0, 0.75, 0.75, 2 * 10 ** 5)
        assert b - a < 1e-2
        a = kernel_cross_sum(2, 0, 1.5, 1.5, 10 ** 5)
        b = kernel_cross_sum(2, 0, 1.5, 1.5, 2 * 10 ** 5)
        assert b - a < 1e-8


class TestBoundReport:
    def test_spread_per_gamma(self):
        for gamma in (0.6, 0.75, 1.0, 1.5):
            report = verify_kernel_bound(gamma, 200, 10 ** 5)
            assert report.spread < 10.0, f"gamma={gamma}"

    def test_mixed_spread(self):
        report = verify_kernel_bound(0.75, 200, 10 ** 5, mixed=True)
        assert report.spread < 10.0

    def test_mixed_requires_fractional_gamma(self):
        with pytest.raises(DomainError):
            verify_kernel_bound(1.5, 100, 10 ** 4, mixed=True)

    def test_report_tsv(self, tmp_path):
        report = verify_kernel_bound(0.75, 10, 10 ** 4)
        out = tmp_path / "report.tsv"
        report.to_tsv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "lag\tsum\tbound\tratio"
        assert len(lines) == 1 + 9
