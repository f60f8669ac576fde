"""Bifurcation sweeps: long-run orbit clouds over a parameter range.

The initial point 0.5001 (not 0.5) avoids landing exactly on super-stable
orbits; the metadata records it.  Sweeps across r are independent and can
run on a process pool with a deterministic ordered merge.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .maps import FlatTentMap, LogisticMap, SineMap, TentMap, UnimodalMap

X0 = 0.5001
DEFAULT_BURN = 500
DEFAULT_KEEP = 200
DEFAULT_STEPS = 1000

_FAMILIES = {"tent": TentMap, "flat_tent": FlatTentMap,
             "logistic": LogisticMap, "sine": SineMap}


def family_map(kind: str, r: float) -> UnimodalMap:
    cls = _FAMILIES[kind]
    if cls in (TentMap, FlatTentMap):
        return cls(Fraction(r).limit_denominator(10**9))
    return cls(r)


def orbit_tail(kind: str, r: float, burn: int = DEFAULT_BURN,
               keep: int = DEFAULT_KEEP) -> list[float]:
    """Post-transient orbit values of the family member at r."""
    m = family_map(kind, r)
    x = X0
    for _ in range(burn):
        x = float(m(x))
    out = []
    for _ in range(keep):
        x = float(m(x))
        out.append(x)
    return out


def sweep(kind: str, r_lo: float, r_hi: float, steps: int = DEFAULT_STEPS,
          burn: int = DEFAULT_BURN, keep: int = DEFAULT_KEEP,
          jobs: int = 1) -> list[tuple[float, list[float]]]:
    """(r, orbit tail) per grid value, merged in r order regardless of jobs."""
    rs = [r_lo + (r_hi - r_lo) * i / max(steps - 1, 1) for i in range(steps)]
    rs = [r for r in rs if 0 < r <= 1]
    if jobs <= 1:
        return [(r, orbit_tail(kind, r, burn, keep)) for r in rs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tails = pool.map(orbit_tail, [kind] * len(rs), rs,
                         [burn] * len(rs), [keep] * len(rs))
        return list(zip(rs, tails))


def cluster_count(values: list[float], tol: float = 1e-3) -> int:
    """Number of tol-separated clusters among orbit values (attractor size)."""
    pts = sorted(values)
    clusters = 1
    for a, b in zip(pts, pts[1:]):
        if b - a > tol:
            clusters += 1
    return clusters


def dispersed(values: list[float], tol: float = 1e-3,
              mass_cap: float = 0.10) -> bool:
    """True when no cluster holds more than mass_cap of the orbit mass."""
    pts = sorted(values)
    largest = run = 1
    for a, b in zip(pts, pts[1:]):
        run = run + 1 if b - a <= tol else 1
        largest = max(largest, run)
    return largest <= mass_cap * len(pts)
