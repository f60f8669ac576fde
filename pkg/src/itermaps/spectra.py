"""Dominant roots of the oscillation polynomials and the interval-transition
matrix whose powers lower-bound crossing counts.

The two polynomial families are

    P_inc(p) = x^p - 2 x^(p-1) + 1      (increasing p-cycles)
    P_odd(p) = x^p - 2 x^(p-2) - 1      (odd p-cycles)

and the transition matrix A_p encodes how an increasing p-cycle's gap
intervals map onto each other under one application of the map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ROOT_TOL = 1e-12

PHI = (1 + math.sqrt(5)) / 2


def p_inc(p: int, x: float) -> float:
    return x**p - 2 * x ** (p - 1) + 1


def p_odd(p: int, x: float) -> float:
    return x**p - 2 * x ** (p - 2) - 1


def _bisect(f, lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    flo = f(lo)
    if flo == 0:
        return lo
    if flo * f(hi) > 0:
        raise ValueError("no sign change in bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if f(mid) == 0:
            return mid
        if flo * f(mid) < 0:
            hi = mid
        else:
            lo = mid
            flo = f(mid)
    return (lo + hi) / 2


def rho_inc(p: int) -> float:
    """Largest root of P_inc(p); increases from the golden ratio toward 2.

    The only positive roots are 1 and the dominant one, and the polynomial is
    negative throughout (1, rho), so [1.5, 2] brackets cleanly for all p >= 3.
    """
    if p < 3:
        raise ValueError("p must be >= 3")
    return _bisect(lambda x: p_inc(p, x), 1.5, 2.0)


def rho_odd(p: int) -> float:
    """Largest (only positive) root of P_odd(p); decreases toward sqrt(2)."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be odd and >= 3")
    return _bisect(lambda x: p_odd(p, x), math.sqrt(2), 2.0)


def fact_lower_bound(p: int) -> float:
    """Proven bracket floor for rho_inc: max(2 - 4/2^p, golden ratio)."""
    return max(2 - 4 / 2**p, PHI)


def verify_root_bounds(p: int) -> bool:
    """Check rho_inc(p) sits inside [max(2 - 4/2^p, phi), 2)."""
    rho = rho_inc(p)
    return fact_lower_bound(p) - 1e-9 <= rho < 2


@dataclass(frozen=True)
class TransitionMatrix:
    """(p-1)x(p-1) 0/1 matrix: ones on the subdiagonal and the last column."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.p - 1
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValueError("entries must be (p-1) x (p-1)")
        for i in range(n):
            for j in range(n):
                expect = 1 if (j == n - 1 or i == j + 1) else 0
                if self.entries[i][j] != expect:
                    raise ValueError("not the gap-transition stencil")

    def apply(self, v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(row[j] * v[j] for j in range(len(v)))
                     for row in self.entries)


def transition_matrix(p: int) -> TransitionMatrix:
    if p < 3:
        raise ValueError("p must be >= 3")
    n = p - 1
    rows = tuple(
        tuple(1 if (j == n - 1 or i == j + 1) else 0 for j in range(n))
        for i in range(n)
    )
    return TransitionMatrix(p=p, entries=rows)


@dataclass(frozen=True)
class CrossingVector:
    """A_p^k applied to the all-ones vector: per-gap crossing lower bounds.

    Entries are exact integers, non-decreasing along the vector, and the last
    entry never exceeds twice the first.
    """

    p: int
    k: int
    y: tuple[int, ...]

    def __post_init__(self):
        if any(b < a for a, b in zip(self.y, self.y[1:])):
            raise ValueError("entries must be non-decreasing")
        if self.y[-1] > 2 * self.y[0]:
            raise ValueError("last entry exceeds twice the first")


def crossing_lb_vector(p: int, k: int) -> CrossingVector:
    if k < 0:
        raise ValueError("k must be >= 0")
    a = transition_matrix(p)
    v = tuple([1] * (p - 1))
    for _ in range(k):
        v = a.apply(v)
    return CrossingVector(p=p, k=k, y=v)


def spectral_radius(a: TransitionMatrix, tol: float = 1e-10,
                    max_iter: int = 10**5) -> float:
    """Power iteration from the all-ones vector.

    Iterates are exactly the crossing vectors rescaled, and the dominant
    eigenvalue of A_p is simple, so convergence is geometric.
    """
    v = [1.0] * (a.p - 1)
    lam = 0.0
    for _ in range(max_iter):
        w = [float(x) for x in a.apply(tuple(v))]
        norm = max(abs(x) for x in w)
        w = [x / norm for x in w]
        new_lam = sum(wi * vi for wi, vi in zip(w, v)) / sum(
            vi * vi for vi in v) * norm
        if abs(new_lam - lam) <= tol * abs(new_lam):
            return new_lam
        lam, v = new_lam, w
    raise RuntimeError("power iteration did not converge")


def rho_table(p_lo: int = 3, p_hi: int = 10) -> list[dict]:
    """Rows (p, rho_inc, fact bound, rho_odd-or-None) for the summary table."""
    rows = []
    for p in range(p_lo, p_hi + 1):
        rows.append({
            "p": p,
            "rho_inc": rho_inc(p),
            "fact_lower_bound": fact_lower_bound(p),
            "rho_odd": rho_odd(p) if p % 2 == 1 else None,
        })
    return rows
