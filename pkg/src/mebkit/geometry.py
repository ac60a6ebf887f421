"""Core geometric types and exact small-instance primitives.

Coordinates are 64-bit floats throughout.  Every containment or boundary
comparison uses a scale-aware tolerance (``geom_tol``) instead of exact
arithmetic, so callers get consistent behavior across coordinate scales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError

TOL_BASE = 1e-9      # comparison slack per unit of coordinate scale
PIVOT_EPS = 1e-12    # scaled-pivot threshold deciding affine dependence


def geom_tol(*operands) -> float:
    """Comparison tolerance for the given operands.

    Returns ``1e-9 * (1 + scale)`` where ``scale`` is the largest absolute
    coordinate among the operands.  Arrays and scalars both contribute.
    """
    scale = 0.0
    for obj in operands:
        arr = np.asarray(obj, dtype=float)
        if arr.size:
            scale = max(scale, float(np.max(np.abs(arr))))
    return TOL_BASE * (1.0 + scale)


def as_point(p) -> np.ndarray:
    """Coerce to a finite 1-d float vector."""
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"expected a 1-d coordinate vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


def as_points(P) -> np.ndarray:
    """Coerce to a finite (n, d) float array with n >= 1 and d >= 1."""
    arr = np.asarray(P, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(
            f"expected an (n, d) point array with n >= 1, d >= 1, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


@dataclass(frozen=True)
class Ball:
    """Closed Euclidean ball."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius < 0.0:
            raise ValueError("ball radius must be nonnegative")

    @property
    def dim(self) -> int:
        return self.center.size

    def contains(self, points, tol: float | None = None) -> bool:
        """True when every point lies within ``radius + tol`` of the center."""
        arr = np.atleast_2d(np.asarray(points, dtype=float))
        if arr.shape[1] != self.dim:
            raise ValueError(f"dimension mismatch: ball is {self.dim}-d, points are {arr.shape[1]}-d")
        if tol is None:
            tol = geom_tol(arr, self.center, self.radius)
        return bool(np.all(np.linalg.norm(arr - self.center, axis=1) <= self.radius + tol))


@dataclass(frozen=True)
class BallBody:
    """Symmetric convex body: a Euclidean ball of fixed radius, any dimension."""

    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if self.radius <= 0.0:
            raise ValueError("body radius must be positive")


@dataclass(frozen=True)
class BoxBody:
    """Symmetric convex body: an axis-aligned box given by per-axis half extents."""

    half_extents: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "half_extents", as_point(self.half_extents))
        if not np.all(self.half_extents > 0.0):
            raise ValueError("box half extents must be positive")

    @property
    def dim(self) -> int:
        return self.half_extents.size


def distance(p, q) -> float:
    """Euclidean distance between two points of equal dimension."""
    a = as_point(p)
    b = as_point(q)
    if a.size != b.size:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return float(np.linalg.norm(a - b))


def barycenter(points) -> np.ndarray:
    """Arithmetic mean of a nonempty point set."""
    return as_points(points).mean(axis=0)


def _solve_pivoted(A, b):
    """Gaussian elimination with partial pivoting and a scaled pivot threshold.

    Returns ``(x, None)`` on success or ``(None, k)`` when the pivot for
    column ``k`` falls below ``PIVOT_EPS`` times the matrix scale, which is
    the affine-dependence signal for circumball systems.
    """
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m = A.shape[0]
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    for k in range(m):
        piv = k + int(np.argmax(np.abs(A[k:, k])))
        if abs(A[piv, k]) <= PIVOT_EPS * scale:
            return None, k
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            b[[k, piv]] = b[[piv, k]]
        factors = A[k + 1:, k] / A[k, k]
        A[k + 1:, k:] -= np.outer(factors, A[k, k:])
        b[k + 1:] -= factors * b[k]
    x = np.empty(m)
    for k in range(m - 1, -1, -1):
        x[k] = (b[k] - A[k, k + 1:] @ x[k + 1:]) / A[k, k]
    return x, None


def circumball(points) -> Ball:
    """Unique ball through <= d+1 affinely independent points.

    The center lies in the affine hull of the inputs and every input lies on
    the boundary.  Equating squared distances to the first point yields a
    Gram system solved by pivoted elimination; a collapsed pivot means the
    points are affinely dependent and raises ``DegenerateInputError`` naming
    the offending subset.
    """
    P = as_points(points)
    m, d = P.shape
    if m > d + 1:
        raise DegenerateInputError(
            range(m), f"{m} points in {d} dimensions cannot be affinely independent"
        )
    if m == 1:
        return Ball(P[0].copy(), 0.0)
    if m == 2:
        center = (P[0] + P[1]) / 2.0  # exact midpoint for the diametral pair
        return Ball(center, float(np.linalg.norm(P[0] - center)))
    U = P[1:] - P[0]
    G = U @ U.T
    rhs = 0.5 * np.einsum("ij,ij->i", U, U)
    x, bad_col = _solve_pivoted(G, rhs)
    if x is None:
        offenders = [0] + [j + 1 for j in range(bad_col)] + [bad_col + 1]
        raise DegenerateInputError(offenders)
    center = P[0] + x @ U
    radius = float(np.max(np.linalg.norm(P - center, axis=1)))
    return Ball(center, radius)


def fits_in_translate(body, W) -> bool:
    """True when some translate of the body contains every point of ``W``.

    For a ball body the check is whether the minimum enclosing radius of
    ``W`` is at most the body radius; for a box body it is a per-axis extent
    comparison.  Both use the scale-aware tolerance.
    """
    pts = as_points(W)
    if isinstance(body, BoxBody):
        if body.dim != pts.shape[1]:
            raise ValueError(
                f"dimension mismatch: box is {body.dim}-d, points are {pts.shape[1]}-d"
            )
        half_span = (pts.max(axis=0) - pts.min(axis=0)) / 2.0
        return bool(np.all(half_span <= body.half_extents + geom_tol(pts, body.half_extents)))
    if isinstance(body, BallBody):
        from .meb import exact_meb  # deferred import: solvers build on this module

        radius = exact_meb(pts).ball.radius
        return radius <= body.radius + geom_tol(pts, body.radius)
    raise TypeError(f"unsupported body type: {type(body).__name__}")
