"""Characteristic-polynomial roots, transition matrices, crossing vectors."""

import math
import random

import pytest

from itermaps import spectra

# frozen target table: p -> (rho_inc, fact floor, rho_odd or None)
TABLE = {
    3: (1.618, 1.618, 1.618),
    4: (1.839, 1.75, None),
    5: (1.928, 1.875, 1.513),
    6: (1.966, 1.938, None),
    7: (1.984, 1.969, 1.466),
    8: (1.992, 1.984, None),
    9: (1.996, 1.992, 1.441),
    10: (1.999, 1.996, None),
}


class TestRoots:
    @pytest.mark.parametrize("p", sorted(TABLE))
    def test_rho_inc_matches_table(self, p):
        assert spectra.rho_inc(p) == pytest.approx(TABLE[p][0], abs=1e-3)

    @pytest.mark.parametrize("p", sorted(TABLE))
    def test_fact_bound_matches_table(self, p):
        assert spectra.fact_lower_bound(p) == pytest.approx(TABLE[p][1], abs=1e-3)

    @pytest.mark.parametrize("p", [3, 5, 7, 9])
    def test_rho_odd_matches_table(self, p):
        assert spectra.rho_odd(p) == pytest.approx(TABLE[p][2], abs=1e-3)

    def test_roots_are_roots(self):
        for p in range(3, 11):
            assert abs(spectra.p_inc(p, spectra.rho_inc(p))) < 1e-9
            if p % 2 == 1:
                assert abs(spectra.p_odd(p, spectra.rho_odd(p))) < 1e-9

    def test_monotone_trends(self):
        incs = [spectra.rho_inc(p) for p in range(3, 11)]
        assert all(a < b for a, b in zip(incs, incs[1:]))
        odds = [spectra.rho_odd(p) for p in (3, 5, 7, 9)]
        assert all(a > b for a, b in zip(odds, odds[1:]))

    def test_verify_root_bounds(self):
        assert all(spectra.verify_root_bounds(p) for p in range(3, 11))

    def test_odd_bracket_from_theory(self):
        for p in (3, 5, 7, 9, 11):
            rho = spectra.rho_odd(p)
            assert math.sqrt(2) < rho < math.sqrt(2 + 2 / 2 ** (p / 2)) + 1e-12

    def test_degenerate_p_rejected(self):
        with pytest.raises(ValueError):
            spectra.rho_inc(2)
        with pytest.raises(ValueError):
            spectra.rho_odd(4)


class TestTransitionMatrix:
    def test_p3_stencil(self):
        assert spectra.transition_matrix(3).entries == ((0, 1), (1, 1))

    def test_p4_stencil(self):
        assert spectra.transition_matrix(4).entries == (
            (0, 0, 1), (1, 0, 1), (0, 1, 1))

    def test_p3_characteristic_polynomial(self):
        # det(A_3 - xI) = x^2 - x - 1 by direct 2x2 expansion
        (a, b), (c, d) = spectra.transition_matrix(3).entries
        for x in (-1.0, 0.5, 2.0, 3.25):
            det = (a - x) * (d - x) - b * c
            assert det == pytest.approx(x * x - x - 1)

    def test_polynomial_rewrite_identity(self):
        # (x - 1) * (x^(p-1) - sum_{i<p-1} x^i) == x^p - 2x^(p-1) + 1
        rng = random.Random(99)
        for _ in range(100):
            p = rng.randint(3, 9)
            x = rng.uniform(-2, 2)
            reduced = x ** (p - 1) - sum(x**i for i in range(p - 1))
            assert (x - 1) * reduced == pytest.approx(
                spectra.p_inc(p, x), abs=1e-9)


class TestCrossingVectors:
    def test_fibonacci_for_p3(self):
        seq = [spectra.crossing_lb_vector(3, k).y for k in range(4)]
        assert seq == [(1, 1), (1, 2), (2, 3), (3, 5)]

    def test_p4_first_step(self):
        assert spectra.crossing_lb_vector(4, 1).y == (1, 2, 2)

    def test_invariants_hold_wide_range(self):
        for p in range(3, 9):
            rho = spectra.rho_inc(p)
            for k in range(41):
                y = spectra.crossing_lb_vector(p, k).y
                assert all(b >= a for a, b in zip(y, y[1:]))
                assert y[-1] <= 2 * y[0]
                assert max(y) >= rho**k / 2

    def test_exact_integers_beyond_float_range(self):
        y = spectra.crossing_lb_vector(3, 200).y
        assert y[1] > 2**130  # Fibonacci growth, exact big ints


class TestSpectralRadius:
    @pytest.mark.parametrize("p", range(3, 11))
    def test_agrees_with_polynomial_root(self, p):
        a = spectra.transition_matrix(p)
        assert abs(spectra.spectral_radius(a) - spectra.rho_inc(p)) <= 1e-8

    def test_golden_ratio_base_case(self):
        val = spectra.spectral_radius(spectra.transition_matrix(3))
        assert val == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)
