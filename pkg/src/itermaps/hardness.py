"""Inapproximability certificates and the two approximability counterexamples.

A certificate is a concrete interval [a,b] of guaranteed width together with
a measured crossing count of f^k over it; from it follow width thresholds
(how wide a shallow net must be), adversarial samples (alternating points
forcing classification error), and exact error reports against candidate
approximants.  The two counterexample constructions show the width floors
genuinely need symmetry and concavity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from . import oscillation, pl, relunet, spectra
from .cycles import CycleRecord
from .errors import CertificateError
from .maps import CustomPLMap, UnimodalMap

INCREASING_WIDTH_FLOOR = Fraction(1, 18)
STEFAN_WIDTH_FLOOR = Fraction(7, 100)


def _require_symmetric_concave(m: UnimodalMap):
    if not getattr(m, "symmetric", False):
        raise CertificateError(f"{m.kind} map is not symmetric")
    if not getattr(m, "concave", False):
        raise CertificateError(f"{m.kind} map is not concave")


@dataclass(frozen=True)
class OscCertificate:
    """Witness interval with a verified crossing count for f^k."""

    mode: str  # "increasing" | "stefan"
    p: int
    k: int
    a: float | Fraction
    b: float | Fraction
    count: int
    rate: float  # the exponent base the count is measured against

    @property
    def width(self):
        return self.b - self.a

    def required_count(self) -> float:
        if self.mode == "increasing":
            return self.rate**self.k / 2
        return self.rate ** (self.k - self.p)

    def floors(self) -> dict:
        w = float(self.width)
        return {"linf": w / 2, "cls": 0.25, "l1": w * w / 16}

    def to_json(self) -> str:
        def enc(x):
            return (f"{x.numerator}/{x.denominator}"
                    if isinstance(x, Fraction) else x)

        return json.dumps({
            "mode": self.mode, "p": self.p, "k": self.k,
            "a": enc(self.a), "b": enc(self.b), "width": float(self.width),
            "count": self.count, "rate": self.rate, "floors": self.floors(),
        })


def increasing_certificate(m: UnimodalMap, c: CycleRecord, k: int
                           ) -> OscCertificate:
    """Certificate from an increasing p-cycle of a symmetric concave map.

    Scans the consecutive gaps of the sorted cycle for one of width >= 1/18
    whose measured crossings reach half the spectral rate rho_inc(p)^k.
    """
    _require_symmetric_concave(m)
    if not c.increasing:
        raise CertificateError("cycle is not increasing")
    p = c.period
    if p < 3:
        raise CertificateError("need p >= 3")
    rho = spectra.rho_inc(p)
    need = rho**k / 2
    pts = sorted(c.orbit)
    gaps = sorted(zip(pts, pts[1:]), key=lambda g: g[1] - g[0], reverse=True)
    wide = [(a, b) for a, b in gaps
            if float(b - a) >= float(INCREASING_WIDTH_FLOOR)]
    if not wide:
        raise CertificateError(
            "no qualifying gap: every cycle gap is narrower than 1/18 "
            "(a symmetry or concavity hypothesis is violated)")
    shortfall = []
    for a, b in wide:
        count = oscillation.count_crossings_map(m, k, a, b)
        if count >= need:
            return OscCertificate(mode="increasing", p=p, k=k, a=a, b=b,
                                  count=count, rate=rho)
        shortfall.append(count)
    raise CertificateError(
        f"count shortfall: need >= {need:.3f}, measured {max(shortfall)}")


def stefan_certificate(m: UnimodalMap, c: CycleRecord, k: int
                       ) -> OscCertificate:
    """Certificate from a Stefan p-cycle (odd p): width >= 0.07 inside the
    cycle's span, crossings >= rho_odd(p)^(k-p)."""
    _require_symmetric_concave(m)
    if not c.stefan:
        raise CertificateError("cycle is not a Stefan cycle")
    p = c.period
    if p % 2 == 0:
        raise CertificateError("Stefan cycles have odd period")
    if k <= p:
        raise CertificateError("need k > p")
    rho = spectra.rho_odd(p)
    need = rho ** (k - p)
    pts = sorted(c.orbit)
    # the span [x_p, x_(p-1)] splits at the middle pair [x_1, x_2]
    mid_lo, mid_hi = pts[(p - 1) // 2], pts[(p + 1) // 2]
    candidates = [(pts[0], mid_lo), (mid_lo, mid_hi), (mid_hi, pts[-1])]
    shortfall = []
    found_wide = False
    for a, b in sorted(candidates, key=lambda g: g[1] - g[0], reverse=True):
        if float(b - a) < float(STEFAN_WIDTH_FLOOR):
            continue
        found_wide = True
        count = oscillation.count_crossings_map(m, k, a, b)
        if count >= need:
            return OscCertificate(mode="stefan", p=p, k=k, a=a, b=b,
                                  count=count, rate=rho)
        shortfall.append(count)
    if not found_wide:
        raise CertificateError("no qualifying gap: span pieces below 0.07")
    raise CertificateError(
        f"count shortfall: need >= {need:.3f}, measured {max(shortfall)}")


@dataclass(frozen=True)
class WidthThreshold:
    """Width ceiling below which the counting bounds force Omega(1) error."""

    p: int
    k: int
    depth: int
    mode: str  # "linf" | "l1" | "odd_linf" | "odd_l1"
    u_max: float

    @property
    def vacuous(self) -> bool:
        return self.u_max < 1


def width_threshold(p: int, k: int, depth: int, mode: str) -> WidthThreshold:
    if not (p >= 3 and k >= 1 and 1 <= depth <= k):
        raise ValueError("need p >= 3 and 1 <= depth <= k")
    if mode in ("linf", "l1"):
        rho, exponent = spectra.rho_inc(p), k / depth
    elif mode in ("odd_linf", "odd_l1"):
        rho, exponent = spectra.rho_odd(p), (k - p) / depth
    else:
        raise ValueError(f"unknown mode {mode!r}")
    factor = Fraction(1, 8) if mode.endswith("linf") else Fraction(1, 16)
    return WidthThreshold(p=p, k=k, depth=depth, mode=mode,
                          u_max=float(factor) * rho**exponent)


def adversarial_sample(fk: pl.PiecewiseLinear, cert: OscCertificate
                       ) -> pl.SampleSet:
    """Alternating points where f^k attains the certificate's band edges.

    Sample size is min(measured crossings, floor(rate^k)/2): soundness only
    needs alternation points that actually exist.
    """
    if cert.count < 2:
        raise CertificateError("certificate must witness at least 2 crossings")
    a, b = pl.rat(cert.a), pl.rat(cert.b)
    touches = pl.crossing_points(fk, a, b)
    n = min(cert.count, int(cert.rate**cert.k) // 2)
    pts = tuple(x for x, _ in touches[:n])
    return pl.SampleSet(points=pts, threshold=(a + b) / 2)


@dataclass(frozen=True)
class CandidateReport:
    """Exact error measurements of one candidate g against f^k."""

    linf: Fraction
    l1: Fraction
    cls_error: Fraction
    g_pieces: int
    sample_size: int
    cert_count: int

    @property
    def counting_applies(self) -> bool:
        return self.g_pieces < self.cert_count

    @property
    def counting_floor(self) -> Fraction:
        """Universal bound: cls error >= 1/2 - pieces/|S| on alternating S."""
        return Fraction(1, 2) - Fraction(self.g_pieces, self.sample_size)

    @property
    def violations(self) -> list[str]:
        out = []
        if self.cls_error < self.counting_floor:
            out.append("classification error below the counting floor")
        if self.counting_applies:
            if self.cls_error < Fraction(1, 4):
                out.append("cls floor 1/4 violated with few-piece candidate")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps({
            "linf": float(self.linf), "l1": float(self.l1),
            "cls_error": float(self.cls_error), "g_pieces": self.g_pieces,
            "sample_size": self.sample_size,
            "threshold_check": self.counting_applies,
            "violations": self.violations,
        })


def certify_against_candidate(fk: pl.PiecewiseLinear, g: pl.PiecewiseLinear,
                              cert: OscCertificate, s: pl.SampleSet
                              ) -> CandidateReport:
    """Measure all three errors exactly and check the counting inequality."""
    return CandidateReport(
        linf=pl.linf_diff(fk, g),
        l1=pl.l1_diff(fk, g),
        cls_error=pl.classification_error(fk, g, s),
        g_pieces=pl.monotone_pieces(g),
        sample_size=len(s),
        cert_count=cert.count,
    )


# ---------------------------------------------------------------------------
# candidate generators for the certification sweep


def decimated_candidate(fk: pl.PiecewiseLinear, pieces: int
                        ) -> pl.PiecewiseLinear:
    """Interpolant of f^k through ~pieces+1 of its own knots (greedy skip)."""
    ks = fk.knots
    if len(ks) <= pieces + 1:
        return fk
    idx = sorted({round(i * (len(ks) - 1) / pieces) for i in range(pieces + 1)})
    return pl.new([ks[i] for i in idx])


def least_squares_candidate(fk: pl.PiecewiseLinear, pieces: int,
                            grid: int = 512) -> pl.PiecewiseLinear:
    """Uniform-knot PL fit of f^k by discrete least squares on a fine grid."""
    import numpy as np

    xs = np.linspace(0.0, 1.0, grid + 1)
    fk_knots_x = np.array([float(x) for x, _ in fk.knots])
    fk_knots_y = np.array([float(y) for _, y in fk.knots])
    ys = np.interp(xs, fk_knots_x, fk_knots_y)
    knots = np.linspace(0.0, 1.0, pieces + 1)
    # hat-function design matrix
    design = np.zeros((len(xs), len(knots)))
    for j, t in enumerate(knots):
        left = knots[j - 1] if j > 0 else t
        right = knots[j + 1] if j + 1 < len(knots) else t
        rise = np.where((xs >= left) & (xs <= t),
                        (xs - left) / (t - left) if t > left else 1.0, 0.0)
        fall = np.where((xs > t) & (xs <= right),
                        (right - xs) / (right - t) if right > t else 0.0, 0.0)
        design[:, j] = rise + fall
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    coef = np.clip(coef, 0.0, 1.0)
    pts = [(Fraction(t).limit_denominator(10**6),
            Fraction(float(c)).limit_denominator(10**6))
           for t, c in zip(knots, coef)]
    pts[0] = (Fraction(0), pts[0][1])
    pts[-1] = (Fraction(1), pts[-1][1])
    return pl.new(pts)


def random_candidate(rng, pieces: int) -> pl.PiecewiseLinear:
    """Random PL on uniform knots with rational values."""
    pts = [(Fraction(i, pieces), Fraction(rng.randint(0, 64), 64))
           for i in range(pieces + 1)]
    return pl.new(pts)


# ---------------------------------------------------------------------------
# counterexample constructions


def build_need_symmetry(p: int, eps) -> CustomPLMap:
    """Concave but asymmetric map with an increasing p-cycle crowded into
    [1-eps, 1]; its iterates stay trivially 3-piece approximable."""
    eps = pl.rat(eps)
    if p < 3:
        raise ValueError("p must be >= 3")
    if (1 - eps) / eps <= p - 1:
        raise ValueError("eps too large for concavity: need (1-eps)/eps > p-1")
    xs = [1 - Fraction(p - j + 1, p) * eps for j in range(1, p + 1)]
    knots = [(Fraction(0), Fraction(0))]
    knots += [(xs[j], xs[j + 1]) for j in range(p - 1)]
    knots.append((xs[p - 1], xs[0]))
    knots.append((Fraction(1), Fraction(0)))
    m = CustomPLMap(pl.new(knots))
    assert m.concave and not m.symmetric
    return m


def build_need_concavity(p: int, eps) -> CustomPLMap:
    """Symmetric but non-concave map whose increasing p-cycle is crowded
    into an eps-band around 1/2."""
    eps = pl.rat(eps)
    if p < 3:
        raise ValueError("p must be >= 3")
    if not (0 < eps < Fraction(1, 2)):
        raise ValueError("eps must lie in (0, 1/2)")
    h = Fraction(1, 2)
    shoulder = h - Fraction(p - 2, p - 1) * eps / 2
    knots = [
        (Fraction(0), Fraction(0)),
        (h - eps / 2, shoulder),
        (h - eps / (2 * (p - 1)), h),
        (h, h + eps / 2),
        (h + eps / (2 * (p - 1)), h),
        (h + eps / 2, shoulder),
        (Fraction(1), Fraction(0)),
    ]
    m = CustomPLMap(pl.new(knots))
    assert m.symmetric and not m.concave
    return m


def three_piece_band_approx(fk: pl.PiecewiseLinear, band_lo, band_hi
                            ) -> pl.PiecewiseLinear:
    """Three-piece approximant: ramps to the band's midline between the
    first and last crossings of the band floor.

    For the counterexample constructions, f^k is linear outside the band's
    invariant region and trapped inside it, so the sup error is half the
    band height; the caller measures it exactly either way.
    """
    band_lo, band_hi = pl.rat(band_lo), pl.rat(band_hi)
    mid = (band_lo + band_hi) / 2
    above = [x for x, y in fk.knots if y >= band_lo]
    if not above:
        raise ValueError("f^k never reaches the band")
    a, b = min(above), max(above)
    pts = [(Fraction(0), Fraction(0)), (a, mid), (b, mid),
           (Fraction(1), Fraction(0))]
    if a == 0:
        pts = pts[1:]
    if b == 1:
        pts = pts[:-1]
    return pl.new(pts)


def counterexample_report(m: CustomPLMap, p: int, eps, k_max: int = 10
                          ) -> dict:
    """Audit a counterexample: structure flags, cycle, and per-k 3-piece
    approximation errors of the band approximant."""
    eps = pl.rat(eps)
    f = m.to_pl()
    apex_val = m.max_value()
    band_lo = apex_val - eps
    errors = {}
    fk = pl.identity()
    for k in range(1, k_max + 1):
        fk = pl.compose(fk, f)
        g = three_piece_band_approx(fk, band_lo, apex_val)
        errors[k] = pl.linf_diff(fk, g)
    return {
        "symmetric": m.symmetric,
        "concave": m.concave,
        "max_linf_error": max(errors.values()),
        "errors": errors,
        "net_width": relunet.synth_from_pl(
            three_piece_band_approx(fk, band_lo, apex_val)).width,
    }
