"""Parametric unimodal map families with analytic preimage oracles.

Tent, flat-tent, and custom-PL maps are exact (rational parameter, rational
arithmetic); logistic and sine maps are double precision with a documented
1e-12 tolerance on preimages and orbits.  All maps send [0,1] to [0,1] with
f(0) = f(1) = 0 and a maximum at the critical point.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Union

import numpy as np

from . import pl
from .errors import NotPiecewiseLinear

HALF = Fraction(1, 2)

#: tolerance for float preimage/orbit arithmetic on smooth families
SMOOTH_TOL = 1e-12
#: two float preimages closer than this collapse to the critical point
PREIMAGE_DEDUP_TOL = 1e-10

Scalar = Union[Fraction, int, float]


def _audit_unimodal(m: "UnimodalMap", grid: int = 101):
    end_tol = 0 if m.is_exact else 1e-15
    if abs(float(m(0.0))) > end_tol or abs(float(m(1.0))) > end_tol:
        raise ValueError(f"{m.kind}: endpoints must map to 0")
    for i in range(1, grid + 1):
        x = i / (grid + 1)
        if not m(x) > 0:
            raise ValueError(f"{m.kind}: not positive at x={x}")


class UnimodalMap:
    """Base class; subclasses define kind, evaluation, and preimages."""

    kind = "abstract"
    symmetric = True
    concave = True
    #: False for families whose maximum is attained on a plateau
    strictly_unimodal = True

    @property
    def is_exact(self) -> bool:
        return isinstance(self.r, Fraction)

    def __call__(self, x):
        raise NotImplementedError

    def preimages(self, y) -> tuple:
        """All x with f(x) = y, at most one per side of the critical point."""
        raise NotImplementedError

    def max_value(self):
        return self(HALF if self.is_exact else 0.5)

    def to_pl(self) -> pl.PiecewiseLinear:
        raise NotPiecewiseLinear(f"{self.kind} map is not piecewise linear")

    def orbit(self, x0, n: int) -> list:
        """Forward orbit x0, f(x0), ..., f^n(x0); dtype follows x0."""
        out = [x0]
        for _ in range(n):
            out.append(self(out[-1]))
        return out

    def critical_orbit(self, steps: int) -> "CriticalOrbit":
        if steps < 1:
            raise ValueError("need at least one step")
        x0 = HALF if self.is_exact else 0.5
        values = tuple(self.orbit(x0, steps)[1:])
        return CriticalOrbit(values=values, x_max=values[0])

    def to_json(self) -> str:
        r = self.r
        payload = {"kind": self.kind,
                   "r": f"{r.numerator}/{r.denominator}" if self.is_exact else r}
        return json.dumps(payload)

    def __repr__(self):
        return f"{type(self).__name__}(r={self.r})"


class CriticalOrbit:
    """Forward orbit of the critical point; x_max is the map's maximum value."""

    def __init__(self, values, x_max):
        self.values = tuple(values)
        self.x_max = x_max
        lo, hi = 0, 1
        if any(not (lo <= float(v) <= hi) for v in self.values):
            raise ValueError("orbit escaped [0,1]")


class TentMap(UnimodalMap):
    """f(x) = 2r min(x, 1-x), exact for rational r in (0,1]."""

    kind = "tent"

    def __init__(self, r):
        r = pl.rat(r)
        if not (0 < r <= 1):
            raise ValueError("tent parameter must lie in (0,1]")
        self.r = r
        _audit_unimodal(self)

    def __call__(self, x):
        if isinstance(x, (Fraction, int)):
            x = pl.rat(x)
            if not (0 <= x <= 1):
                raise ValueError(f"x={x} outside [0,1]")
            return 2 * self.r * min(x, 1 - x)
        rf = float(self.r)
        return 2.0 * rf * np.minimum(x, 1.0 - x)

    def preimages(self, y):
        if isinstance(y, (Fraction, int)):
            y = pl.rat(y)
            r = self.r
            if y > r:
                return ()
            if y == r:
                return (HALF,)
            t = y / (2 * r)
            return (t, 1 - t)
        rf = float(self.r)
        if y > rf + SMOOTH_TOL:
            return ()
        t = min(y, rf) / (2.0 * rf)
        if 1.0 - 2.0 * t < PREIMAGE_DEDUP_TOL:
            return (0.5,)
        return (t, 1.0 - t)

    def to_pl(self):
        return pl.new([(0, 0), (HALF, self.r), (1, 0)])


class FlatTentMap(UnimodalMap):
    """Symmetric trapezoid min(5rx/2, r, 5r(1-x)/2): plateau r on [2/5, 3/5].

    Only weakly unimodal; admitted for bifurcation plotting, not for the
    counting machinery that needs a strict maximizer.
    """

    kind = "flat_tent"
    strictly_unimodal = False

    def __init__(self, r):
        r = pl.rat(r)
        if not (0 < r <= 1):
            raise ValueError("flat-tent parameter must lie in (0,1]")
        self.r = r
        _audit_unimodal(self)

    def __call__(self, x):
        if isinstance(x, (Fraction, int)):
            x = pl.rat(x)
            if not (0 <= x <= 1):
                raise ValueError(f"x={x} outside [0,1]")
            return min(5 * self.r * x / 2, self.r, 5 * self.r * (1 - x) / 2)
        rf = float(self.r)
        return np.minimum(np.minimum(2.5 * rf * x, rf), 2.5 * rf * (1.0 - x))

    def preimages(self, y):
        y = pl.rat(y)
        r = self.r
        if y > r:
            return ()
        if y == r:
            # representative endpoints of the full-plateau preimage
            return (Fraction(2, 5), Fraction(3, 5))
        t = 2 * y / (5 * r)
        return (t, 1 - t)

    def to_pl(self):
        return pl.new([(0, 0), (Fraction(2, 5), self.r),
                       (Fraction(3, 5), self.r), (1, 0)])


class LogisticMap(UnimodalMap):
    """f(x) = 4 r x (1-x) for float r in (0,1]."""

    kind = "logistic"

    def __init__(self, r):
        r = float(r)
        if not (0 < r <= 1):
            raise ValueError("logistic parameter must lie in (0,1]")
        self.r = r
        _audit_unimodal(self)

    def __call__(self, x):
        if isinstance(x, Fraction):
            x = float(x)
        return 4.0 * self.r * x * (1.0 - x)

    def preimages(self, y):
        y = float(y)
        r = self.r
        t = 1.0 - y / r
        if t < -SMOOTH_TOL:
            return ()
        s = math.sqrt(max(t, 0.0))
        if s < PREIMAGE_DEDUP_TOL:
            return (0.5,)
        return ((1.0 - s) / 2.0, (1.0 + s) / 2.0)


class SineMap(UnimodalMap):
    """f(x) = r sin(pi x) for float r in (0,1]."""

    kind = "sine"

    def __init__(self, r):
        r = float(r)
        if not (0 < r <= 1):
            raise ValueError("sine parameter must lie in (0,1]")
        self.r = r
        _audit_unimodal(self)

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return self.r * np.sin(np.pi * x)
        return self.r * math.sin(math.pi * float(x))

    def preimages(self, y):
        y = float(y)
        r = self.r
        if y > r + SMOOTH_TOL:
            return ()
        t = math.asin(min(y / r, 1.0)) / math.pi
        if abs(1.0 - 2.0 * t) < PREIMAGE_DEDUP_TOL:
            return (0.5,)
        return (t, 1.0 - t)


class CustomPLMap(UnimodalMap):
    """Unimodal map defined by an explicit exact PL function."""

    kind = "custom_pl"

    def __init__(self, f: pl.PiecewiseLinear, scale=1):
        scale = pl.rat(scale)
        if not (0 < scale <= 1):
            raise ValueError("scale must lie in (0,1]")
        if scale != 1:
            f = pl.new([(x, scale * y) for x, y in f.knots])
        self.f = f
        self.r = scale
        ys = [y for _, y in f.knots]
        if ys[0] != 0 or ys[-1] != 0:
            raise ValueError("custom map must vanish at 0 and 1")
        slopes = f.slopes
        signs = [1 if s > 0 else (-1 if s < 0 else 0) for s in slopes]
        nonzero = [s for s in signs if s != 0]
        if not nonzero or nonzero[0] != 1 or nonzero[-1] != -1 or (
                pl.monotone_pieces(f) != 2):
            raise ValueError("custom map must increase then decrease")
        self.strictly_unimodal = 0 not in signs
        apex = max(range(len(f.knots)), key=lambda i: f.knots[i][1])
        self.apex_x = f.knots[apex][0]
        self.symmetric = all(
            (1 - x, y) in set(f.knots) for x, y in f.knots)
        self.concave = all(a >= b for a, b in zip(slopes, slopes[1:]))
        _audit_unimodal(self)

    @property
    def is_exact(self):
        return True

    def __call__(self, x):
        if isinstance(x, (Fraction, int)):
            return self.f(x)
        # float fast path via local interpolation on float knots
        ks = self.f.knots
        xs = [float(a) for a, _ in ks]
        ys = [float(b) for _, b in ks]
        return float(np.interp(x, xs, ys))

    def max_value(self):
        return self.f(self.apex_x)

    def preimages(self, y):
        y = pl.rat(y)
        hits = []
        for (x0, y0), (x1, y1) in zip(self.f.knots, self.f.knots[1:]):
            if y0 == y1:
                if y0 == y:
                    hits.extend([x0, x1])
                continue
            lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
            if lo <= y <= hi:
                hits.append(x0 + (y - y0) * (x1 - x0) / (y1 - y0))
        return tuple(sorted(set(hits)))

    def to_pl(self):
        return self.f

    def to_json(self):
        return json.dumps({"kind": self.kind, "custom_pl":
                           json.loads(self.f.to_json())})


def tent_near(x: float, bump=Fraction(1, 10**12)) -> TentMap:
    """Tent map at a rational parameter just above the float x.

    Cycles of the tent family are born exactly at the polynomial-root
    parameters, so rounding must land on the existing side; the +1e-12 bump
    dominates both the float representation error and the root solver
    tolerance while keeping critical-orbit perturbations below 1e-9.
    """
    return TentMap(Fraction(x) + bump)


def from_json(text: str) -> UnimodalMap:
    payload = json.loads(text)
    kind = payload["kind"]
    if kind == "custom_pl":
        quads = payload["custom_pl"]
        f = pl.PiecewiseLinear(tuple((Fraction(a, b), Fraction(c, d))
                                     for a, b, c, d in quads))
        return CustomPLMap(f)
    r = payload["r"]
    r = Fraction(r) if isinstance(r, str) else r
    return {"tent": TentMap, "flat_tent": FlatTentMap,
            "logistic": LogisticMap, "sine": SineMap}[kind](r)
