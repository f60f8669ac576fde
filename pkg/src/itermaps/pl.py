"""Exact continuous piecewise-linear functions on [0,1] over rational arithmetic.

Everything in this module is exact: knots are pairs of ``fractions.Fraction``
and no operation introduces rounding.  This is the carrier for iterated maps
f^k, for functions computed by rational ReLU networks, and for all error
measurements (sup norm, integral norm, classification error).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ResourceLimitError

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

#: default ceiling on knot counts produced by compose/iterate
DEFAULT_KNOT_CAP = 10**7


def rat(x) -> Fraction:
    """Coerce an int, Fraction, or string like '2/5' / '0.93' to Fraction.

    Floats are rejected: approximation of irrational parameters must be an
    explicit caller decision (see maps.tent_near).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


def _collinear(p, q, r) -> bool:
    (x0, y0), (x1, y1), (x2, y2) = p, q, r
    return (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Canonical PL function [0,1] -> [0,1].

    Knot x's strictly increase from 0 to 1, values stay in [0,1], and no
    interior knot is collinear with its neighbours (construction removes
    redundant knots, so equality of functions is equality of knot tuples).
    """

    knots: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = [(rat(x), rat(y)) for x, y in self.knots]
        if not pts:
            raise ValueError("empty knot list")
        xs = [p[0] for p in pts]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("knot x-coordinates must strictly increase")
        if xs[0] != 0 or xs[-1] != 1:
            raise ValueError("knots must span [0,1]")
        if any(not (0 <= y <= 1) for _, y in pts):
            raise ValueError("knot values must lie in [0,1]")
        # strip collinear interior knots in one pass
        canon = [pts[0]]
        for p in pts[1:]:
            while len(canon) >= 2 and _collinear(canon[-2], canon[-1], p):
                canon.pop()
            canon.append(p)
        object.__setattr__(self, "knots", tuple(canon))

    def __call__(self, x) -> Fraction:
        x = rat(x)
        if not (0 <= x <= 1):
            raise ValueError(f"x={x} outside [0,1]")
        ks = self.knots
        lo, hi = 0, len(ks) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ks[mid][0] <= x:
                lo = mid
            else:
                hi = mid
        (x0, y0), (x1, y1) = ks[lo], ks[hi]
        if x == x0:
            return y0
        if x == x1:
            return y1
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        ks = self.knots
        return tuple(
            (y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(ks, ks[1:])
        )

    def to_json(self) -> str:
        quads = [
            [x.numerator, x.denominator, y.numerator, y.denominator]
            for x, y in self.knots
        ]
        return json.dumps(quads)

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseLinear":
        quads = json.loads(text)
        return cls(
            tuple(
                (Fraction(a, b), Fraction(c, d)) for a, b, c, d in quads
            )
        )


def new(knots: Iterable) -> PiecewiseLinear:
    """Build a canonical PL from (x, y) pairs (exact rationals)."""
    return PiecewiseLinear(tuple((rat(x), rat(y)) for x, y in knots))


def identity() -> PiecewiseLinear:
    return new([(0, 0), (1, 1)])


def constant(c) -> PiecewiseLinear:
    return new([(0, c), (1, c)])


def compose(inner: PiecewiseLinear, outer: PiecewiseLinear,
            cap: int = DEFAULT_KNOT_CAP) -> PiecewiseLinear:
    """Exact outer(inner(x)).

    Breakpoints are inner's knots plus, on every non-flat inner piece, the
    preimages of outer's interior knot abscissae.
    """
    xs = set(x for x, _ in inner.knots)
    outer_xs = [x for x, _ in outer.knots[1:-1]]
    for (x0, y0), (x1, y1) in zip(inner.knots, inner.knots[1:]):
        if y0 == y1:
            continue
        lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
        for kx in outer_xs:
            if lo < kx < hi:
                xs.add(x0 + (kx - y0) * (x1 - x0) / (y1 - y0))
        if len(xs) > cap:
            raise ResourceLimitError(f"composition exceeds {cap} knots")
    pts = sorted(xs)
    return PiecewiseLinear(tuple((x, outer(inner(x))) for x in pts))


def iterate(f: PiecewiseLinear, k: int,
            cap: int = DEFAULT_KNOT_CAP) -> PiecewiseLinear:
    """f composed with itself k times; k = 0 gives the identity."""
    if k < 0:
        raise ValueError("k must be >= 0")
    result = identity()
    for _ in range(k):
        result = compose(result, f, cap=cap)
    return result


def monotone_pieces(f: PiecewiseLinear) -> int:
    """Minimal number of maximal monotone intervals.

    Flat segments merge into the adjacent monotone piece, so only sign
    alternations of the nonzero slopes are counted.
    """
    signs = [1 if s > 0 else -1 for s in f.slopes if s != 0]
    if not signs:
        return 1
    return 1 + sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def crossing_points(f: PiecewiseLinear, a, b) -> tuple[tuple[Fraction, Fraction], ...]:
    """Alternating (x, level) touch sequence of levels a and b.

    Consecutive touches of the same level collapse, so the result strictly
    alternates between a and b; each adjacent pair delimits one full
    traversal of [a,b].  Touches that do not lead to the opposite level
    (grazing contacts) vanish in the collapse.
    """
    a, b = rat(a), rat(b)
    if not (0 <= a < b <= 1):
        raise ValueError("need 0 <= a < b <= 1")
    events: list[tuple[Fraction, Fraction]] = []
    for (x0, y0), (x1, y1) in zip(f.knots, f.knots[1:]):
        if y0 == y1:
            if y0 == a or y0 == b:
                events.append((x0, y0))
            continue
        lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
        hits = []
        for level in (a, b):
            if lo <= level <= hi:
                t = x0 + (level - y0) * (x1 - x0) / (y1 - y0)
                hits.append((t, level))
        events.extend(sorted(hits))
    collapsed: list[tuple[Fraction, Fraction]] = []
    for ev in events:
        if collapsed and collapsed[-1][1] == ev[1]:
            continue
        collapsed.append(ev)
    return tuple(collapsed)


def crossings(f: PiecewiseLinear, a, b) -> int:
    """Number of full traversals of [a,b] by f (exact knot sweep)."""
    pts = crossing_points(f, a, b)
    return max(0, len(pts) - 1)


def _merged_xs(f: PiecewiseLinear, g: PiecewiseLinear) -> list[Fraction]:
    return sorted({x for x, _ in f.knots} | {x for x, _ in g.knots})


def linf_diff(f: PiecewiseLinear, g: PiecewiseLinear) -> Fraction:
    """Exact sup |f - g|; attained at a knot of the merged breakpoint set."""
    return max(abs(f(x) - g(x)) for x in _merged_xs(f, g))


def l1_diff(f: PiecewiseLinear, g: PiecewiseLinear) -> Fraction:
    """Exact integral of |f - g| over [0,1]."""
    xs = _merged_xs(f, g)
    total = ZERO
    for x0, x1 in zip(xs, xs[1:]):
        d0 = f(x0) - g(x0)
        d1 = f(x1) - g(x1)
        w = x1 - x0
        if d0 * d1 < 0:
            z = x0 + d0 * w / (d0 - d1)
            total += abs(d0) * (z - x0) / 2 + abs(d1) * (x1 - z) / 2
        else:
            total += (abs(d0) + abs(d1)) * w / 2
    return total


@dataclass(frozen=True)
class SampleSet:
    """Sample abscissae with a decision threshold, for classification error."""

    points: tuple[Fraction, ...]
    threshold: Fraction

    def __post_init__(self):
        pts = tuple(rat(x) for x in self.points)
        t = rat(self.threshold)
        if not pts:
            raise ValueError("empty sample set")
        if any(not (0 <= x <= 1) for x in pts):
            raise ValueError("sample points must lie in [0,1]")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("sample points must strictly increase")
        if not (0 < t < 1):
            raise ValueError("threshold must lie in (0,1)")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "threshold", t)

    def __len__(self):
        return len(self.points)


def classification_error(f: PiecewiseLinear, g: PiecewiseLinear,
                         s: SampleSet) -> Fraction:
    """Fraction of sample points where the threshold labels of f and g differ."""
    t = s.threshold
    wrong = sum(1 for x in s.points if (f(x) >= t) != (g(x) >= t))
    return Fraction(wrong, len(s.points))
