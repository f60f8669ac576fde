"""Bifurcation sweeps: attractor cluster counts and dispersion."""

import pytest

from itermaps import bifurcation


class TestClusters:
    def test_superstable_two_cycle(self):
        tail = bifurcation.orbit_tail("logistic", 0.8090)
        assert bifurcation.cluster_count(tail) == 2

    def test_stable_four_cycle(self):
        tail = bifurcation.orbit_tail("logistic", 0.8671)
        assert bifurcation.cluster_count(tail) == 4

    def test_superstable_three_cycle(self):
        tail = bifurcation.orbit_tail("logistic", 0.9580)
        assert bifurcation.cluster_count(tail) == 3

    def test_full_tent_dispersed(self):
        tail = bifurcation.orbit_tail("tent", 1.0)
        assert bifurcation.dispersed(tail)

    def test_low_parameter_fixed_point(self):
        tail = bifurcation.orbit_tail("logistic", 0.6)
        assert bifurcation.cluster_count(tail) == 1


class TestSweep:
    def test_serial_sweep_shape(self):
        data = bifurcation.sweep("logistic", 0.7, 0.9, steps=8, burn=50,
                                 keep=20)
        assert len(data) == 8
        assert all(len(tail) == 20 for _, tail in data)
        rs = [r for r, _ in data]
        assert rs == sorted(rs)

    def test_parallel_matches_serial(self):
        serial = bifurcation.sweep("logistic", 0.8, 0.95, steps=6, burn=50,
                                   keep=10, jobs=1)
        parallel = bifurcation.sweep("logistic", 0.8, 0.95, steps=6, burn=50,
                                     keep=10, jobs=2)
        assert serial == parallel

    def test_out_of_range_parameters_dropped(self):
        data = bifurcation.sweep("logistic", 0.9, 1.2, steps=7, burn=10,
                                 keep=5)
        assert all(0 < r <= 1 for r, _ in data)

    def test_sine_and_flat_tent_run(self):
        for fam in ("sine", "flat_tent"):
            tail = bifurcation.orbit_tail(fam, 0.9, burn=100, keep=30)
            assert all(0 <= x <= 1 for x in tail)
