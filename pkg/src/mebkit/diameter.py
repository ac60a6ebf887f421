"""Diameter of a point set: exact, heuristic, and streaming estimates.

Exact routes are the quadratic pair scan and, in the plane, rotating
calipers over the convex hull (the hull has the same diameter as the set,
so only antipodal hull pairs need checking).  ``diameter_doublesweep`` is a
fast certified lower bound.  The streaming sketches never buffer the
stream: the anchored sketch guarantees E <= diam <= 2E, and the
directional-grid sketch guarantees E <= diam <= (1+eps)E with the grid
resolution chosen from eps.  Exact diameter computation in the plane costs
at least n log n in the algebraic decision model, which is why the sketches
exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import as_point, as_points, geom_tol
from .seeding import derive_rng


@dataclass(frozen=True)
class DiameterResult:
    value: float
    pair: tuple[int, int] | None
    exact: bool
    pairs_at_max: int


def diameter_bruteforce(P) -> DiameterResult:
    """Largest pairwise distance by scanning all pairs.

    Reports the lowest lexicographic achieving pair and the number of pairs
    within tolerance of the maximum (in the plane that count never exceeds n,
    the classical bound on how often a maximum distance can repeat).
    """
    P = as_points(P)
    n = len(P)
    if n < 2:
        raise ValueError("need at least two points")
    tol = geom_tol(P)
    value = -1.0
    pair = (0, 1)
    for i in range(n - 1):
        gaps = np.linalg.norm(P[i + 1:] - P[i], axis=1)
        j = int(np.argmax(gaps))
        if gaps[j] > value:
            value = float(gaps[j])
            pair = (i, i + 1 + j)
    at_max = 0
    for i in range(n - 1):
        gaps = np.linalg.norm(P[i + 1:] - P[i], axis=1)
        at_max += int(np.count_nonzero(gaps >= value - tol))
    return DiameterResult(value, pair, True, at_max)


def _hull_chains(P):
    """Upper and lower hull chains (original indices, lexicographic order).

    Strict turns only, so collinear interior points are dropped; they can
    never end a diameter pair.
    """
    order = np.lexsort((P[:, 1], P[:, 0]))

    def cross(o, a, b):
        return (P[a][0] - P[o][0]) * (P[b][1] - P[o][1]) - (P[a][1] - P[o][1]) * (P[b][0] - P[o][0])

    lower: list[int] = []
    for idx in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], idx) <= 0.0:
            lower.pop()
        lower.append(int(idx))
    upper: list[int] = []
    for idx in order[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], idx) <= 0.0:
            upper.pop()
        upper.append(int(idx))
    # deduplicate shared endpoints; keep both chains in increasing x order
    return upper[::-1], lower


def _antipodal_pairs(P, upper, lower):
    """Candidate diameter pairs from rotating calipers over the two chains."""
    i, j = 0, len(lower) - 1
    while i < len(upper) - 1 or j > 0:
        yield upper[i], lower[j]
        if i == len(upper) - 1:
            j -= 1
        elif j == 0:
            i += 1
        else:
            du = P[upper[i + 1]] - P[upper[i]]
            dl = P[lower[j]] - P[lower[j - 1]]
            if du[1] * dl[0] > dl[1] * du[0]:
                i += 1
            else:
                j -= 1
    yield upper[-1], lower[0]


def diameter_calipers_2d(P) -> DiameterResult:
    """Exact planar diameter via rotating calipers on the convex hull.

    Matches the pair scan on every input; ``pairs_at_max`` counts antipodal
    hull pairs within tolerance of the maximum.
    """
    P = as_points(P)
    n, d = P.shape
    if d != 2:
        raise ValueError(f"rotating calipers needs d = 2, got d = {d}")
    if n < 2:
        raise ValueError("need at least two points")
    tol = geom_tol(P)
    upper, lower = _hull_chains(P)
    if len(set(upper) | set(lower)) == 1:
        return DiameterResult(0.0, (0, 1), True, n * (n - 1) // 2)
    seen = set()
    candidates = []
    for a, b in _antipodal_pairs(P, upper, lower):
        key = (min(a, b), max(a, b))
        if a == b or key in seen:
            continue
        seen.add(key)
        candidates.append((float(np.linalg.norm(P[a] - P[b])), key))
    value = max(gap for gap, _ in candidates)
    at_max = sum(1 for gap, _ in candidates if gap >= value - tol)
    pair = min(key for gap, key in candidates if gap == value)
    return DiameterResult(value, pair, True, at_max)


def diameter_doublesweep(P, seed: int = 0, restarts: int = 3) -> DiameterResult:
    """Iterated farthest-point sweeps: a fast certified lower bound.

    From a seeded start, walk to the farthest point and repeat while the
    reached distance improves; a few restarts keep the estimate honest.  The
    reported value is a realized pair distance, so it never exceeds the true
    diameter (``exact=False``).
    """
    P = as_points(P)
    n = len(P)
    if n < 2:
        raise ValueError("need at least two points")
    if restarts < 1:
        raise ValueError("need at least one restart")
    value = -1.0
    pair = (0, 1)
    for run in range(restarts):
        current = int(derive_rng(seed, "doublesweep", run).integers(n))
        reached = -1.0
        while True:
            gaps = np.linalg.norm(P - P[current], axis=1)
            far = int(np.argmax(gaps))
            best = float(gaps[far])
            if best > value:
                value = best
                pair = (min(current, far), max(current, far))
            if best <= reached:
                break
            reached = best
            current = far
    return DiameterResult(value, pair, False, 1)


class TwoApproxSketch:
    """One-pass anchored sketch: E <= diam <= 2E by the triangle inequality.

    The anchor is the first streamed point and E is the largest distance
    seen from it.  Anchored sketches from different streams cannot be
    merged.
    """

    def __init__(self):
        self.anchor = None
        self.max_dist = 0.0
        self.count = 0

    def update(self, point):
        p = as_point(point)
        if self.anchor is None:
            self.anchor = p.copy()
        elif p.size != self.anchor.size:
            raise ValueError("stream changed dimension")
        else:
            self.max_dist = max(self.max_dist, float(np.linalg.norm(p - self.anchor)))
        self.count += 1

    @property
    def estimate(self) -> float:
        if self.count == 0:
            raise ValueError("empty stream has no diameter estimate")
        return self.max_dist

    def merge(self, other):
        raise TypeError("anchored sketches cannot be merged; use the directional sketch")


def direction_count(eps: float) -> int:
    """Smallest m with cos(pi / (2m)) >= 1 / (1 + eps)."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    m = 1
    while math.cos(math.pi / (2.0 * m)) < 1.0 / (1.0 + eps):
        m += 1
    return m


class DirectionalSketch:
    """Planar extent sketch over a grid of m directions: E <= diam <= (1+eps)E.

    Every direction is within pi/(2m) of a grid direction, so the widest
    projected extent under-reports the diameter by at most the factor
    cos(pi/(2m)) >= 1/(1+eps).  Sketches with the same grid merge by taking
    per-direction extremes.
    """

    def __init__(self, eps: float):
        self.eps = float(eps)
        self.m = direction_count(eps)
        angles = np.arange(self.m) * math.pi / self.m
        self.directions = np.column_stack([np.cos(angles), np.sin(angles)])
        self.lo = np.full(self.m, np.inf)
        self.hi = np.full(self.m, -np.inf)
        self.count = 0

    def update(self, point):
        p = as_point(point)
        if p.size != 2:
            raise ValueError("directional sketch is planar only")
        proj = self.directions @ p
        np.minimum(self.lo, proj, out=self.lo)
        np.maximum(self.hi, proj, out=self.hi)
        self.count += 1

    @property
    def estimate(self) -> float:
        if self.count == 0:
            raise ValueError("empty stream has no diameter estimate")
        return float(np.max(self.hi - self.lo))

    def merge(self, other: "DirectionalSketch") -> "DirectionalSketch":
        if not isinstance(other, DirectionalSketch) or other.m != self.m:
            raise TypeError("can only merge directional sketches over the same grid")
        merged = DirectionalSketch(self.eps)
        merged.lo = np.minimum(self.lo, other.lo)
        merged.hi = np.maximum(self.hi, other.hi)
        merged.count = self.count + other.count
        return merged


def stream_2approx(stream):
    """Feed a stream of points into an anchored sketch.

    Returns (estimate, sketch); the true diameter lies in [estimate, 2 * estimate].
    """
    sketch = TwoApproxSketch()
    for point in stream:
        sketch.update(point)
    return sketch.estimate, sketch


def stream_eps_2d(stream, eps: float):
    """Feed a planar stream into a directional sketch.

    Returns (estimate, sketch); the true diameter lies in
    [estimate, (1 + eps) * estimate].
    """
    sketch = DirectionalSketch(eps)
    for point in stream:
        sketch.update(point)
    return sketch.estimate, sketch
