"""Periodic orbits, itineraries, regime classification, and forcing order.

A cycle's itinerary is read off by rotating the orbit so it starts at its
smallest point and recording each point's rank in the sorted order; the
itinerary "12...p" (an increasing cycle) marks the chaotic regime, and a
power-of-two cycle keeps the doubling regime only while its itinerary is an
iterated 2-extension of the fixed point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import pl
from .maps import LogisticMap, SineMap, UnimodalMap

FLOAT_MATCH_TOL = 1e-8
RESIDUAL_TOL = 1e-9
BISECT_TOL = 1e-12

#: root-bracketing cells per unit period for smooth maps
GRID_PER_PERIOD = 4096


def itinerary_of_points(orbit: Sequence) -> tuple[int, ...]:
    """Itinerary of a cyclically-ordered orbit (successor = next element).

    Rotates the orbit to start at its minimum and assigns each point its
    1-based rank among the sorted points.
    """
    pts = list(orbit)
    if len(set(pts)) != len(pts):
        raise ValueError("orbit points must be distinct")
    start = min(range(len(pts)), key=lambda i: pts[i])
    rotated = pts[start:] + pts[:start]
    rank = {x: i + 1 for i, x in enumerate(sorted(pts))}
    return tuple(rank[x] for x in rotated)


def itinerary_str(itin: tuple[int, ...]) -> str:
    if max(itin) <= 9:
        return "".join(str(a) for a in itin)
    return ",".join(str(a) for a in itin)


def parse_itinerary(text: str) -> tuple[int, ...]:
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch) for ch in text)


def increasing_itinerary(p: int) -> tuple[int, ...]:
    return tuple(range(1, p + 1))


def stefan_itinerary(p: int) -> tuple[int, ...]:
    """Itinerary of the odd-period alternating nested pattern.

    The pattern x_p < x_(p-2) < ... < x_3 < x_1 < x_2 < x_4 < ... < x_(p-1)
    starts its rotation at x_p; ranks follow in closed form.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("Stefan cycles need odd p >= 3")
    out = [1]
    for j in range(1, p):
        if j % 2 == 1:
            out.append((p - j) // 2 + 1)
        else:
            out.append((p + 1 + j) // 2)
    return tuple(out)


@dataclass(frozen=True)
class CycleRecord:
    """A p-cycle in dynamical order starting at its smallest point."""

    period: int
    orbit: tuple
    itinerary: tuple[int, ...]
    exact: bool
    residual: float

    @property
    def increasing(self) -> bool:
        return self.itinerary == increasing_itinerary(self.period)

    @property
    def stefan(self) -> bool:
        p = self.period
        return p % 2 == 1 and p >= 3 and self.itinerary == stefan_itinerary(p)

    @property
    def power_of_two(self) -> bool:
        return self.period & (self.period - 1) == 0

    @property
    def primary(self) -> bool:
        if not self.power_of_two:
            return False
        return is_primary_power_of_two(self.itinerary)

    def flags(self) -> dict:
        return {"increasing": self.increasing, "stefan": self.stefan,
                "primary": self.primary, "power_of_two": self.power_of_two}

    def to_json(self) -> str:
        orbit = [f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction)
                 else x for x in self.orbit]
        return json.dumps({"period": self.period, "orbit": orbit,
                           "itinerary": itinerary_str(self.itinerary),
                           "flags": self.flags(), "residual": self.residual})


def is_2_extension(child, parent) -> bool:
    """Check the doubling identity a_i = ceil(a'_i/2) = ceil(a'_(i+p)/2)."""
    child = parse_itinerary(child) if isinstance(child, str) else tuple(child)
    parent = parse_itinerary(parent) if isinstance(parent, str) else tuple(parent)
    p = len(parent)
    if len(child) != 2 * p:
        raise ValueError("child must have twice the parent's length")
    return all(
        parent[i] == -(-child[i] // 2) == -(-child[i + p] // 2)
        for i in range(p)
    )


def halve_2_extension(itin: tuple[int, ...]):
    """Invert the 2-extension map, or None when itin is not an extension."""
    n = len(itin)
    if n % 2 == 1:
        return None
    p = n // 2
    parent = tuple(-(-itin[i] // 2) for i in range(p))
    if sorted(parent) != list(range(1, p + 1)):
        return None
    if not is_2_extension(itin, parent):
        return None
    return parent


def is_primary_power_of_two(itin) -> bool:
    """A power-of-two cycle is primary iff it is an iterated 2-extension of 1."""
    itin = parse_itinerary(itin) if isinstance(itin, str) else tuple(itin)
    n = len(itin)
    if n & (n - 1) != 0:
        raise ValueError("period must be a power of two")
    while len(itin) > 1:
        nxt = halve_2_extension(itin)
        if nxt is None:
            return False
        itin = nxt
    return True


def sharkovsky_precedes(p: int, p2: int) -> bool:
    """True iff p forces p2 (strictly) in the Sharkovsky total order."""
    if p < 1 or p2 < 1:
        raise ValueError("periods must be positive")

    def key(n):
        a = 0
        while n % 2 == 0:
            n //= 2
            a += 1
        if n > 1:
            return (0, a, n)
        return (1, -a)

    return key(p) < key(p2)


def _pl_period_roots(f_p: pl.PiecewiseLinear) -> list[Fraction]:
    roots: set[Fraction] = set()
    for (x0, y0), (x1, y1) in zip(f_p.knots, f_p.knots[1:]):
        s = (y1 - y0) / (x1 - x0)
        if s == 1:
            if y0 == x0:  # whole segment fixed
                roots.update((x0, x1))
            continue
        x = (y0 - s * x0) / (1 - s)
        if x0 <= x <= x1:
            roots.add(x)
    return sorted(roots)


def _smooth_period_roots(m: UnimodalMap, p: int, grid: int) -> list[float]:
    def g(x):
        y = x
        for _ in range(p):
            y = m(y)
        return y - x

    xs = np.linspace(0.0, 1.0, grid + 1)
    ys = xs.copy()
    for _ in range(p):
        ys = m(ys)
    gs = ys - xs
    roots = [0.0]  # the origin is always fixed
    sign = np.sign(gs)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    los, his = xs[idx].copy(), xs[idx + 1].copy()
    for _ in range(60):
        mids = (los + his) / 2
        ym = mids.copy()
        for _ in range(p):
            ym = m(ym)
        gm = ym - mids
        left = gs[idx] * gm < 0
        his[left] = mids[left]
        los[~left] = mids[~left]
    roots.extend(((los + his) / 2).tolist())
    for i in np.nonzero(sign == 0)[0]:
        roots.append(float(xs[i]))
    return sorted(set(roots))


def _orbit_of(m: UnimodalMap, x, p: int):
    orbit = [x]
    for _ in range(p - 1):
        orbit.append(m(orbit[-1]))
    return orbit


def _canonical(orbit):
    i = min(range(len(orbit)), key=lambda j: orbit[j])
    return tuple(orbit[i:]) + tuple(orbit[:i])


def _close(a, b, exact):
    return a == b if exact else abs(float(a) - float(b)) <= FLOAT_MATCH_TOL


def find_cycles(m: UnimodalMap, p_max: int,
                grid_per_period: int = GRID_PER_PERIOD) -> list[CycleRecord]:
    """All distinct cycles of minimal period <= p_max.

    PL kinds solve f^p(x) = x exactly piece by piece; smooth kinds bracket
    sign changes of f^p(x) - x on a uniform grid (4096 cells per unit of
    period) and bisect.  Roots whose minimal period divides p are assigned to
    that period; orbits are deduplicated by rotation.
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    try:
        f1 = m.to_pl()
    except Exception:
        f1 = None
    exact = f1 is not None

    records: list[CycleRecord] = []
    seen: list[tuple] = []
    for p in range(1, p_max + 1):
        if exact:
            roots = _pl_period_roots(pl.iterate(f1, p))
        else:
            roots = _smooth_period_roots(m, p, grid_per_period * p)
        for x in roots:
            # minimal-period filter over proper divisors
            minimal = True
            for d in range(1, p):
                if p % d == 0:
                    y = x
                    for _ in range(d):
                        y = m(y)
                    if _close(y, x, exact):
                        minimal = False
                        break
            if not minimal:
                continue
            orbit = _orbit_of(m, x, p)
            if not exact and any(
                    abs(a - b) <= FLOAT_MATCH_TOL
                    for i, a in enumerate(orbit)
                    for b in orbit[i + 1:]):
                continue  # collapsed orbit: root of a lower period in disguise
            canon = _canonical(orbit)
            if any(len(c) == p and all(_close(a, b, exact)
                                       for a, b in zip(c, canon))
                   for c in seen):
                continue
            seen.append(canon)
            closure = m(orbit[-1])
            residual = abs(float(closure) - float(orbit[0]))
            if residual > (0 if exact else RESIDUAL_TOL):
                continue  # spurious bracket, not a true orbit
            records.append(CycleRecord(
                period=p, orbit=canon,
                itinerary=itinerary_of_points(canon),
                exact=exact, residual=residual))
    records.sort(key=lambda c: (c.period, float(c.orbit[0])))
    return records


@dataclass(frozen=True)
class RegimeReport:
    """Evidence-based regime call over the cycles detected up to p_max."""

    regime: str  # "doubling" | "chaotic"
    witness: CycleRecord | None
    max_power_of_two: int | None
    p_max: int

    def to_json(self) -> str:
        return json.dumps({
            "regime": self.regime,
            "witness": None if self.witness is None
            else json.loads(self.witness.to_json()),
            "q": self.max_power_of_two, "p_max": self.p_max})


def classify_regime(cycles: Sequence[CycleRecord], p_max: int | None = None
                    ) -> RegimeReport:
    """Chaotic iff a non-power-of-two period or a non-primary power-of-two
    itinerary was detected; otherwise doubling with q = log2(max period)."""
    if p_max is None:
        p_max = max((c.period for c in cycles), default=1)
    if not cycles:
        # the endpoint 0 is always fixed, so the doubling floor is q = 0
        return RegimeReport("doubling", None, 0, p_max)
    for c in sorted(cycles, key=lambda c: c.period):
        if not c.power_of_two or not c.primary:
            return RegimeReport("chaotic", c, None, p_max)
    q = max(int(math.log2(c.period)) for c in cycles)
    witness = max(cycles, key=lambda c: c.period)
    return RegimeReport("doubling", witness, q, p_max)


def increasing_cycle_certificate(m: UnimodalMap, p: int,
                                 slack: float = 1e-9) -> bool:
    """Half-orbit sufficient condition for an increasing p-cycle.

    True when f(1/2) > 1/2 and f^2(1/2) < ... < f^p(1/2) <= 1/2 (the last
    comparison takes `slack` to absorb float/rational parameter rounding).
    False means "not certified", not "absent".
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    x0 = Fraction(1, 2) if m.is_exact else 0.5
    orbit = m.orbit(x0, p)
    if not float(orbit[1]) > 0.5:
        return False
    chain = orbit[2:]
    if any(float(b) <= float(a) for a, b in zip(chain, chain[1:])):
        return False
    return float(chain[-1]) <= 0.5 + slack


# MSS forcing order for the logistic family: cycles appear (and are
# super-stable) in this row order as r increases.
FORCING_TABLE = (
    {"p": 2, "itinerary": "12", "regime": "doubling", "r": 0.8090,
     "tags": ("primary",)},
    {"p": 4, "itinerary": "1324", "regime": "doubling", "r": 0.8671,
     "tags": ("primary",)},
    {"p": 6, "itinerary": "143526", "regime": "chaotic", "r": 0.9069,
     "tags": ("primary",)},
    {"p": 5, "itinerary": "13425", "regime": "chaotic", "r": 0.9347,
     "tags": ("stefan", "primary")},
    {"p": 3, "itinerary": "123", "regime": "chaotic", "r": 0.9580,
     "tags": ("stefan", "increasing", "primary")},
    {"p": 6, "itinerary": "135246", "regime": "chaotic", "r": 0.9611,
     "tags": ()},
    {"p": 5, "itinerary": "12435", "regime": "chaotic", "r": 0.9764,
     "tags": ()},
    {"p": 6, "itinerary": "124536", "regime": "chaotic", "r": 0.9844,
     "tags": ()},
    {"p": 4, "itinerary": "1234", "regime": "chaotic", "r": 0.9901,
     "tags": ("increasing",)},
    {"p": 6, "itinerary": "123546", "regime": "chaotic", "r": 0.9944,
     "tags": ()},
    {"p": 5, "itinerary": "12345", "regime": "chaotic", "r": 0.9976,
     "tags": ("increasing",)},
    {"p": 6, "itinerary": "123456", "regime": "chaotic", "r": 0.9994,
     "tags": ("increasing",)},
)


def superstable_r(family, itin, bracket, tol: float = 1e-9,
                  scan: int = 400) -> float:
    """Parameter at which the family's critical orbit closes with itinerary
    `itin` (the cycle contains the critical point).

    `family` is a map constructor taking r (e.g. LogisticMap).  The residual
    f_r^p(1/2) - 1/2 also vanishes at super-stable parameters of divisor
    periods, so the bracket is grid-scanned, every sign change is bisected,
    and the root whose critical orbit has minimal period p and the target
    itinerary is returned.
    """
    itin = parse_itinerary(itin) if isinstance(itin, str) else tuple(itin)
    p = len(itin)

    def g(r):
        m = family(r)
        x = 0.5
        for _ in range(p):
            x = m(x)
        return x - 0.5

    lo, hi = max(bracket[0], 1e-9), min(bracket[1], 1.0)
    rs = [lo + (hi - lo) * i / scan for i in range(scan + 1)]
    gs = [g(r) for r in rs]
    roots = [r for r, v in zip(rs, gs) if v == 0]
    for i in range(scan):
        if gs[i] * gs[i + 1] < 0:
            a, b, ga = rs[i], rs[i + 1], gs[i]
            while b - a > tol:
                mid = (a + b) / 2
                gm = g(mid)
                if gm == 0:
                    a = b = mid
                    break
                if ga * gm < 0:
                    b = mid
                else:
                    a, ga = mid, gm
            roots.append((a + b) / 2)

    seen = []
    for root in sorted(roots):
        m = family(root)
        orbit = m.orbit(0.5, p)[:p]
        gaps = [abs(a - b) for i, a in enumerate(orbit)
                for b in orbit[i + 1:]]
        if gaps and min(gaps) < 1e-7:
            continue  # divisor-period root: orbit points collapse
        got = itinerary_of_points(orbit)
        if got == itin:
            return root
        seen.append((root, itinerary_str(got)))
    raise ValueError(
        f"no super-stable {itinerary_str(itin)} parameter in {bracket}; "
        f"roots found: {seen}")


def solve_forcing_table(family=LogisticMap, pad: float = 0.01) -> list[dict]:
    """Solve every forcing-table row for `family`; rows gain r_solved/delta."""
    out = []
    for row in FORCING_TABLE:
        r0 = row["r"]
        solved = superstable_r(family, row["itinerary"],
                               (r0 - pad, r0 + pad))
        rec = dict(row)
        rec["r_solved"] = solved
        rec["delta"] = abs(solved - r0)
        out.append(rec)
    return out
