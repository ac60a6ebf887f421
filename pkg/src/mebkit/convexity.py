"""Constructive convexity routines: combination reduction, Radon splits,
box intersection checks, circumradius bounds, and hull distances.

Everything here is deterministic and desk-scale exact; the only iterative
piece is the min-norm-point projection behind ``dist_to_hull``, which
terminates on a support-direction improvement certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import GuardError
from .diameter import diameter_bruteforce
from .geometry import as_point, as_points, geom_tol
from .meb import exact_meb

_BCIR_GUARD = 16  # subset enumeration ceiling for barycentric_circumradius


@dataclass(frozen=True)
class ConvexCombination:
    """Indices into a point set, nonnegative coefficients summing to one,
    and the point they reproduce."""

    indices: np.ndarray
    coefficients: np.ndarray
    target: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "indices", np.asarray(self.indices, dtype=int))
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float))
        object.__setattr__(self, "target", as_point(self.target))
        if self.indices.shape != self.coefficients.shape:
            raise ValueError("indices and coefficients must align")


def make_combination(points, indices, coefficients) -> ConvexCombination:
    """Build a combination, computing its target from the weights."""
    P = as_points(points)
    idx = np.asarray(indices, dtype=int)
    coef = np.asarray(coefficients, dtype=float)
    if idx.size and (idx.min() < 0 or idx.max() >= len(P)):
        raise ValueError("combination indices out of range")
    combo = ConvexCombination(idx, coef, coef @ P[idx])
    _validate_combination(P, combo)
    return combo


def _validate_combination(P, combo: ConvexCombination):
    if combo.indices.size == 0:
        raise ValueError("a combination needs at least one point")
    if combo.indices.min() < 0 or combo.indices.max() >= len(P):
        raise ValueError("combination indices out of range")
    if combo.coefficients.min() < -1e-12:
        raise ValueError("combination coefficients must be nonnegative")
    if abs(combo.coefficients.sum() - 1.0) > 1e-9:
        raise ValueError("combination coefficients must sum to one")
    rebuilt = combo.coefficients @ P[combo.indices]
    if np.linalg.norm(rebuilt - combo.target) > geom_tol(P, combo.target):
        raise ValueError("combination does not reproduce its target")


def _affine_dependence(Q) -> np.ndarray:
    """A nontrivial vector with sum zero and zero weighted point sum."""
    m = Q.shape[0]
    M = np.vstack([Q.T, np.ones(m)])
    _, _, Vt = np.linalg.svd(M)
    return Vt[-1]


def caratheodory_reduce(points, combo: ConvexCombination) -> ConvexCombination:
    """Rewrite a convex combination on at most d+1 points with the same target.

    While more than d+1 points carry weight, weight is shifted along an
    affine dependence until some coefficient reaches zero.  Inputs already at
    d+1 or fewer points come back unchanged.
    """
    P = as_points(points)
    _validate_combination(P, combo)
    d = P.shape[1]
    active = combo.coefficients > 0.0
    idx = list(combo.indices[active])
    w = np.array(combo.coefficients[active], dtype=float)
    w = w / w.sum()
    if len(combo.indices) <= d + 1:
        return combo
    while len(idx) > d + 1:
        alpha = _affine_dependence(P[idx])
        if alpha.max() <= 0.0:
            alpha = -alpha
        pos = alpha > 1e-14
        steps = w[pos] / alpha[pos]
        t = steps.min()
        w = w - t * alpha
        w[w < 1e-15] = 0.0
        keep = w > 0.0
        if keep.all():  # numerical stall: zero out the limiting coefficient
            w[np.flatnonzero(pos)[int(np.argmin(steps))]] = 0.0
            keep = w > 0.0
        idx = [i for i, k in zip(idx, keep) if k]
        w = w[keep]
        w = w / w.sum()
    return ConvexCombination(np.array(idx), w, combo.target)


@dataclass(frozen=True)
class RadonPartition:
    left: np.ndarray
    right: np.ndarray
    witness: np.ndarray


def radon_partition(points) -> RadonPartition:
    """Split d+2 points into two groups whose hulls share a witness point.

    The affine dependence of d+2 points yields signed weights; the positive
    side and the nonpositive side each reproduce the same witness.  Zero
    coefficients land on the right side.
    """
    P = as_points(points)
    n, d = P.shape
    if n != d + 2:
        raise ValueError(f"need exactly d+2 = {d + 2} points, got {n}")
    alpha = _affine_dependence(P)
    if alpha[int(np.argmax(np.abs(alpha)))] < 0.0:
        alpha = -alpha
    pos = alpha > 0.0
    weight = alpha[pos].sum()
    witness = (alpha[pos] @ P[pos]) / weight
    return RadonPartition(np.flatnonzero(pos), np.flatnonzero(~pos), witness)


@dataclass(frozen=True)
class AABox:
    """Axis-aligned box [lower, upper]."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", as_point(self.lower))
        object.__setattr__(self, "upper", as_point(self.upper))
        if self.lower.size != self.upper.size:
            raise ValueError("box corners must share a dimension")
        if np.any(self.lower > self.upper):
            raise ValueError("box lower corner must not exceed the upper corner")

    @property
    def dim(self) -> int:
        return self.lower.size


@dataclass(frozen=True)
class HellyReport:
    subfamilies_intersect: bool   # every (d+1)-subfamily has a common point
    family_intersects: bool       # the whole family has a common point
    common_point: np.ndarray | None


def helly_check_boxes(family) -> HellyReport:
    """Check the box Helly property: (d+1)-wise intersection implies global.

    Reports both findings and a common point when one exists.  For boxes the
    implication is exact, so a family passing (a) but failing (b) would be a
    computation error and raises.
    """
    boxes = list(family)
    if not boxes:
        raise ValueError("need at least one box")
    d = boxes[0].dim
    if any(b.dim != d for b in boxes):
        raise ValueError("boxes must share a dimension")
    if len(boxes) < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} boxes, got {len(boxes)}")
    lows = np.array([b.lower for b in boxes])
    ups = np.array([b.upper for b in boxes])
    tol = geom_tol(lows, ups)

    def intersects(rows) -> bool:
        return bool(np.all(lows[rows].max(axis=0) <= ups[rows].min(axis=0) + tol))

    whole = intersects(list(range(len(boxes))))
    small = all(intersects(list(combo)) for combo in itertools.combinations(range(len(boxes)), d + 1))
    if small and not whole:
        raise AssertionError("box Helly property violated; intersection test is inconsistent")
    common = None
    if whole:
        common = (lows.max(axis=0) + ups.min(axis=0)) / 2.0
    return HellyReport(small, whole, common)


def fractional_helly_beta(d: int, alpha: float) -> float:
    """Fraction of a box family pierced by one point when an alpha fraction
    of its (d+1)-subfamilies intersect: 1 - (1 - alpha)**(1/(d+1))."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return 1.0 - (1.0 - alpha) ** (1.0 / (d + 1))


def jung_bound(points):
    """Circumradius bound sqrt(d / (2(d+1))) times the diameter.

    Returns (bound, tight) where ``tight`` reports whether the exact
    enclosing radius attains the bound within tolerance, as the regular
    d-simplex does.
    """
    P = as_points(points)
    n, d = P.shape
    if n < 2:
        raise ValueError("need at least two points")
    diam = diameter_bruteforce(P).value
    bound = math.sqrt(d / (2.0 * (d + 1))) * diam
    rho = exact_meb(P).ball.radius
    return bound, bool(abs(bound - rho) <= geom_tol(P))


def barycentric_circumradius(points) -> float:
    """Largest distance from a subset's mean to that subset's farthest member,
    over all subsets of size 2..d+1.

    Combined with the diameter bound this caps the exact enclosing radius:
    rho <= min(barycentric_circumradius, jung_bound).  Guarded to n <= 16.
    """
    P = as_points(points)
    n, d = P.shape
    if n < 2:
        raise ValueError("need at least two points")
    if n > _BCIR_GUARD:
        raise GuardError(f"subset enumeration is guarded to n <= {_BCIR_GUARD}, got n = {n}")
    best = 0.0
    for size in range(2, min(n, d + 1) + 1):
        idx = np.array(list(itertools.combinations(range(n), size)))
        sub = P[idx]
        centers = sub.mean(axis=1)
        radii = np.linalg.norm(sub - centers[:, None, :], axis=2).max(axis=1)
        best = max(best, float(radii.max()))
    return best


def dist_to_hull(a, points) -> float:
    """Euclidean distance from a point to the convex hull of a point set.

    Min-norm-point descent: grow a corral of support vertices, reproject onto
    its affine hull while clipping to the simplex, and stop when the
    improvement certificate, the inner product of the residual with the best
    support direction, drops below tolerance.  Returns 0 for hull members.
    """
    Q = as_points(points)
    x0 = as_point(a)
    if Q.shape[1] != x0.size:
        raise ValueError(f"dimension mismatch: point is {x0.size}-d, hull points are {Q.shape[1]}-d")
    U = Q - x0
    sq = np.einsum("ij,ij->i", U, U)
    cert_tol = 1e-12 * (1.0 + float(sq.max()))
    corral = [int(np.argmin(sq))]
    w = np.array([1.0])
    x = U[corral[0]].copy()
    for _ in range(32 * (len(Q) + Q.shape[1]) + 64):
        dots = U @ x
        best = int(np.argmin(dots))
        if float(x @ x - dots[best]) <= cert_tol:
            break
        if best in corral:
            break  # no further progress is possible
        corral.append(best)
        w = np.append(w, 0.0)
        while True:
            V = U[corral]
            m = len(corral)
            # affine min-norm over the corral: KKT system with a sum-one row
            system = np.zeros((m + 1, m + 1))
            system[:m, :m] = 2.0 * (V @ V.T)
            system[:m, m] = 1.0
            system[m, :m] = 1.0
            rhs = np.zeros(m + 1)
            rhs[m] = 1.0
            sol, *_ = np.linalg.lstsq(system, rhs, rcond=None)
            alpha = sol[:m]
            if alpha.min() >= -1e-12:
                w = np.clip(alpha, 0.0, None)
                w = w / w.sum()
                break
            shrinking = alpha < w
            ratios = w[shrinking] / (w[shrinking] - alpha[shrinking])
            theta = min(1.0, float(ratios.min()))
            w = (1.0 - theta) * w + theta * alpha
            w[w < 1e-14] = 0.0
            keep = w > 0.0
            if keep.all():
                w[int(np.argmin(w))] = 0.0
                keep = w > 0.0
            corral = [i for i, k in zip(corral, keep) if k]
            w = w[keep]
            w = w / w.sum()
        x = w @ U[corral]
    value = float(np.linalg.norm(x))
    return 0.0 if value * value <= cert_tol else value


def nodim_caratheodory(points, a, r: int):
    """Greedy r-point hull approximation of an interior point.

    Each step adds the point whose inclusion minimizes the distance from
    ``a`` to the hull of the chosen subset.  For a point of the hull the
    result satisfies achieved <= diam(P) / sqrt(r); an even smaller subset
    within diam(P) / sqrt(2r) always exists.  Membership of ``a`` in the
    hull is the caller's responsibility.

    Returns (indices, achieved).
    """
    P = as_points(points)
    target = as_point(a)
    n = len(P)
    if not 1 <= r <= n:
        raise ValueError(f"r must be in 1..{n}, got {r}")
    chosen: list[int] = []
    achieved = math.inf
    for _ in range(r):
        best_i = -1
        best_d = math.inf
        for i in range(n):
            if i in chosen:
                continue
            cand = dist_to_hull(target, P[chosen + [i]])
            if cand < best_d - 1e-15:
                best_i, best_d = i, cand
        chosen.append(best_i)
        achieved = best_d
    return np.array(chosen), float(achieved)
