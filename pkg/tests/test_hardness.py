"""Oscillation certificates, width thresholds, adversarial samples,
counterexample constructions."""

import math
import random
from fractions import Fraction as F

import pytest

from itermaps import cycles, hardness, maps, pl, relunet, spectra
from itermaps.errors import CertificateError

PHI = (1 + math.sqrt(5)) / 2


def increasing_cycle(m, p):
    found = cycles.find_cycles(m, p)
    for c in found:
        if c.period == p and c.increasing:
            return c
    raise AssertionError(f"no increasing {p}-cycle detected")


def stefan_cycle(m, p):
    found = cycles.find_cycles(m, p)
    for c in found:
        if c.period == p and c.stefan:
            return c
    raise AssertionError(f"no Stefan {p}-cycle detected")


class TestIncreasingCertificate:
    def test_golden_tent_k8(self):
        m = maps.tent_near(spectra.rho_inc(3) / 2)
        cert = hardness.increasing_certificate(m, increasing_cycle(m, 3), 8)
        assert cert.count >= PHI**8 / 2  # >= 24
        assert float(cert.width) >= 1 / 18
        # soundness: re-measure from scratch
        fk = pl.iterate(m.to_pl(), 8)
        assert pl.crossings(fk, pl.rat(cert.a), pl.rat(cert.b)) == cert.count

    def test_logistic_superstable_123(self):
        m = maps.LogisticMap(0.9580)
        cert = hardness.increasing_certificate(m, increasing_cycle(m, 3), 8)
        assert float(cert.width) >= 1 / 18
        assert cert.count >= spectra.rho_inc(3) ** 8 / 2

    def test_non_increasing_cycle_rejected(self):
        m = maps.TentMap(F(4, 5))
        two = [c for c in cycles.find_cycles(m, 2) if c.period == 2][0]
        # period-2 cycles are increasing ("12"), so fake a 1324 record
        rec = cycles.CycleRecord(period=4,
                                 orbit=(F(1, 5), F(3, 5), F(2, 5), F(4, 5)),
                                 itinerary=(1, 3, 2, 4), exact=True,
                                 residual=0.0)
        with pytest.raises(CertificateError):
            hardness.increasing_certificate(m, rec, 5)
        del two

    def test_asymmetric_map_rejected(self):
        m = hardness.build_need_symmetry(3, F(1, 10))
        c = increasing_cycle(m, 3)
        with pytest.raises(CertificateError, match="symmetric"):
            hardness.increasing_certificate(m, c, 4)

    def test_p4_and_p5_tents(self):
        for p in (4, 5):
            m = maps.tent_near(spectra.rho_inc(p) / 2)
            cert = hardness.increasing_certificate(
                m, increasing_cycle(m, p), 10)
            assert cert.count >= spectra.rho_inc(p) ** 10 / 2
            assert float(cert.width) >= 1 / 18


class TestStefanCertificate:
    def test_logistic_13425(self):
        m = maps.LogisticMap(0.9347)
        cert = hardness.stefan_certificate(m, stefan_cycle(m, 5), 12)
        assert cert.count >= spectra.rho_odd(5) ** (12 - 5)  # about 18.2
        assert float(cert.width) >= 0.07

    def test_logistic_123_stefan(self):
        m = maps.LogisticMap(0.9580)
        cert = hardness.stefan_certificate(m, stefan_cycle(m, 3), 10)
        assert cert.count >= PHI ** (10 - 3)
        assert float(cert.width) >= 0.07

    def test_even_period_rejected(self):
        m = maps.TentMap(F(19, 20))
        rec = cycles.CycleRecord(period=4,
                                 orbit=(F(1, 5), F(3, 5), F(2, 5), F(4, 5)),
                                 itinerary=(1, 3, 2, 4), exact=True,
                                 residual=0.0)
        with pytest.raises(CertificateError):
            hardness.stefan_certificate(m, rec, 10)

    def test_k_must_exceed_p(self):
        m = maps.LogisticMap(0.9580)
        with pytest.raises(CertificateError):
            hardness.stefan_certificate(m, stefan_cycle(m, 3), 3)


class TestWidthThreshold:
    def test_linf_p4(self):
        t = hardness.width_threshold(4, 20, 2, "linf")
        assert t.u_max == pytest.approx(spectra.rho_inc(4) ** 10 / 8, rel=1e-9)
        assert 55 < t.u_max < 56

    def test_vacuous_flag(self):
        t = hardness.width_threshold(3, 10, 10, "linf")
        assert t.u_max == pytest.approx(PHI / 8, abs=1e-6)
        assert t.vacuous

    def test_odd_exponent_offset(self):
        t = hardness.width_threshold(5, 12, 1, "odd_linf")
        assert t.u_max == pytest.approx(spectra.rho_odd(5) ** 7 / 8, rel=1e-9)

    def test_l1_uses_sixteenth(self):
        t = hardness.width_threshold(3, 12, 2, "l1")
        assert t.u_max == pytest.approx(spectra.rho_inc(3) ** 6 / 16, rel=1e-9)


def full_band_certificate(k):
    """Hand certificate on [0,1] for the full tent: 2^k crossings, rate 2."""
    m = maps.TentMap(1)
    fk = pl.iterate(m.to_pl(), k)
    count = pl.crossings(fk, 0, 1)
    return fk, hardness.OscCertificate(mode="increasing", p=3, k=k,
                                       a=F(0), b=F(1), count=count, rate=2.0)


class TestAdversarialSample:
    def test_tent_k6(self):
        fk, cert = full_band_certificate(6)
        s = hardness.adversarial_sample(fk, cert)
        assert len(s) == 32  # min(64, 2^6 / 2)
        assert s.threshold == F(1, 2)
        # alternating extremes: f^k hits 0 and 1 alternately on S
        vals = [fk(x) for x in s.points]
        assert all(v in (F(0), F(1)) for v in vals)
        assert all(a != b for a, b in zip(vals, vals[1:]))

    def test_constant_candidate_errors(self):
        fk, cert = full_band_certificate(6)
        s = hardness.adversarial_sample(fk, cert)
        report = hardness.certify_against_candidate(
            fk, pl.constant(0), cert, s)
        assert report.cls_error == F(1, 2)
        assert report.ok

    def test_self_candidate_all_zero(self):
        fk, cert = full_band_certificate(5)
        s = hardness.adversarial_sample(fk, cert)
        report = hardness.certify_against_candidate(fk, fk, cert, s)
        assert report.linf == 0 and report.l1 == 0 and report.cls_error == 0
        assert not report.counting_applies  # g has as many pieces as f^k


class TestCandidateSweep:
    def test_counting_floor_holds_for_all_families(self, rng):
        fk, cert = full_band_certificate(8)
        s = hardness.adversarial_sample(fk, cert)
        candidates = []
        for m_pieces in (4, 8, 16):
            candidates.append(hardness.decimated_candidate(fk, m_pieces))
            candidates.append(hardness.least_squares_candidate(fk, m_pieces))
            candidates.append(relunet.eps_approx(fk, F(1, m_pieces)))
        candidates.extend(hardness.random_candidate(rng, 8)
                          for _ in range(25))
        for g in candidates:
            report = hardness.certify_against_candidate(fk, g, cert, s)
            assert report.ok, report.violations
            if report.counting_applies:
                assert report.cls_error >= F(1, 4)
                assert report.linf >= F(1, 4)

    def test_generators_respect_budget(self, rng):
        fk, _ = full_band_certificate(7)
        for m_pieces in (4, 8, 32):
            assert pl.monotone_pieces(
                hardness.decimated_candidate(fk, m_pieces)) <= m_pieces
            assert pl.monotone_pieces(
                hardness.least_squares_candidate(fk, m_pieces)) <= m_pieces
            assert pl.monotone_pieces(
                hardness.random_candidate(rng, m_pieces)) <= m_pieces


class TestCounterexamples:
    def test_need_symmetry_structure(self):
        m = hardness.build_need_symmetry(3, F(1, 10))
        assert m.concave and not m.symmetric
        c = increasing_cycle(m, 3)
        assert sorted(c.orbit) == [F(9, 10), F(14, 15), F(29, 30)]

    def test_need_symmetry_eps_too_large(self):
        with pytest.raises(ValueError):
            hardness.build_need_symmetry(3, F(1, 2))

    def test_need_symmetry_p5(self):
        m = hardness.build_need_symmetry(5, F(1, 20))
        c = increasing_cycle(m, 5)
        assert c.itinerary == (1, 2, 3, 4, 5)

    def test_need_concavity_structure(self):
        m = hardness.build_need_concavity(3, F(1, 10))
        assert m.symmetric and not m.concave
        c = increasing_cycle(m, 3)
        gaps = [b - a for a, b in zip(sorted(c.orbit), sorted(c.orbit)[1:])]
        assert all(g < F(1, 10) for g in gaps)
        assert max(gaps) < F(1, 18)  # the oscillation interval stays narrow

    def test_both_admit_three_piece_approx(self):
        for build in (hardness.build_need_symmetry,
                      hardness.build_need_concavity):
            m = build(3, F(1, 10))
            report = hardness.counterexample_report(m, 3, F(1, 10), k_max=10)
            assert report["max_linf_error"] <= F(1, 10)
            assert report["net_width"] == 3

    def test_tiny_eps_contrast_with_concave_logistic(self):
        # both counterexamples: 3-piece approx within 1/100 of f^10 ...
        for build in (hardness.build_need_symmetry,
                      hardness.build_need_concavity):
            m = build(3, F(1, 100))
            report = hardness.counterexample_report(m, 3, F(1, 100), k_max=10)
            assert report["max_linf_error"] <= F(1, 100)
        # ... while the symmetric concave map's certificate forbids any
        # 8-piece candidate within 1/36 of f^10
        m = maps.LogisticMap(0.9580)
        cert = hardness.increasing_certificate(m, increasing_cycle(m, 3), 10)
        assert float(cert.width) >= 1 / 18
        assert cert.count >= PHI**10 / 2 > 8


class TestTentCorollary:
    @pytest.mark.parametrize("p", [3, 4, 5])
    def test_half_orbit_is_increasing_cycle(self, p):
        m = maps.tent_near(spectra.rho_inc(p) / 2)
        orbit = m.orbit(F(1, 2), p)
        assert abs(float(orbit[-1]) - 0.5) <= 1e-9
        assert cycles.itinerary_of_points(orbit[:p]) == tuple(range(1, p + 1))
