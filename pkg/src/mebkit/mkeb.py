"""Minimum k-enclosing ball: cover at least k of n points with the smallest ball.

``exact_mkeb`` enumerates candidate balls exhaustively (the optimum is the
circumball of at most d+1 boundary points of its covered subset, so circumballs
of all affinely independent subsets of size 1..d+1 are a complete candidate
family).  ``outlier_meb_sample`` is the sampled variant that tolerates an
eps-fraction of outliers with confidence 1 - delta.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import GuardError
from .geometry import Ball, as_points, geom_tol
from .meb import exact_meb

CANDIDATE_BUDGET = 10_000_000  # guard: n**(d+1) enumeration ceiling


@dataclass(frozen=True)
class MkebSolution:
    """A covering ball, the indices it covers, and the coverage target."""

    ball: Ball
    covered: np.ndarray
    k: int

    def __post_init__(self):
        object.__setattr__(self, "covered", np.asarray(self.covered, dtype=int))
        object.__setattr__(self, "k", int(self.k))


def _candidate_batches(P, chunk=20_000):
    """Yield (centers, radii) batches of circumballs over subsets of size 1..d+1.

    Near-degenerate subsets are skipped; their limiting balls are produced by
    smaller subsets, so the enumeration stays complete.
    """
    n, d = P.shape
    yield P.copy(), np.zeros(n)
    for size in range(2, min(n, d + 1) + 1):
        combos = itertools.combinations(range(n), size)
        while True:
            block = list(itertools.islice(combos, chunk))
            if not block:
                break
            idx = np.array(block)
            sub = P[idx]
            U = sub[:, 1:, :] - sub[:, :1, :]
            lens = np.linalg.norm(U, axis=2)
            ok = np.all(lens > 1e-300, axis=1)
            Un = U / np.maximum(lens, 1e-300)[..., None]
            Gn = Un @ Un.transpose(0, 2, 1)
            ok &= np.linalg.det(Gn) > 1e-20
            if not ok.any():
                continue
            Uk = U[ok]
            G = Uk @ Uk.transpose(0, 2, 1)
            rhs = 0.5 * np.einsum("nij,nij->ni", Uk, Uk)
            try:
                x = np.linalg.solve(G, rhs[..., None])[..., 0]
            except np.linalg.LinAlgError:
                # a borderline subset slipped the filter; fall back per item
                x = np.full(rhs.shape, np.nan)
                for row in range(len(G)):
                    try:
                        x[row] = np.linalg.solve(G[row], rhs[row])
                    except np.linalg.LinAlgError:
                        pass
                keep = np.all(np.isfinite(x), axis=1)
                Uk, x = Uk[keep], x[keep]
                if not len(x):
                    continue
                sub = sub[ok][keep]
                centers = sub[:, 0, :] + np.einsum("ni,nid->nd", x, Uk)
                radii = np.linalg.norm(sub - centers[:, None, :], axis=2).max(axis=1)
                yield centers, radii
                continue
            subk = sub[ok]
            centers = subk[:, 0, :] + np.einsum("ni,nid->nd", x, Uk)
            radii = np.linalg.norm(subk - centers[:, None, :], axis=2).max(axis=1)
            yield centers, radii


def exact_mkeb(P, k: int) -> MkebSolution:
    """Smallest ball covering at least k points, by exhaustive enumeration.

    Ties are broken by (radius, lexicographic center), so the result does not
    depend on enumeration order.  Guarded to n**(d+1) <= 10**7 candidates;
    larger instances should use ``outlier_meb_sample``.
    """
    P = as_points(P)
    n, d = P.shape
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if float(n) ** (d + 1) > CANDIDATE_BUDGET:
        raise GuardError(
            f"n**(d+1) = {float(n) ** (d + 1):.2e} exceeds the exact enumeration "
            f"budget {CANDIDATE_BUDGET:.0e}; use outlier_meb_sample for large instances"
        )
    tol = geom_tol(P)
    best = None  # (radius, center-as-tuple)
    for centers, radii in _candidate_batches(P):
        dist = np.linalg.norm(P[None, :, :] - centers[:, None, :], axis=2)
        counts = (dist <= radii[:, None] + tol).sum(axis=1)
        eligible = np.flatnonzero(counts >= k)
        if not len(eligible):
            continue
        rmin = radii[eligible].min()
        tied = eligible[radii[eligible] == rmin]
        order = np.lexsort(tuple(centers[tied, col] for col in range(d - 1, -1, -1)))
        cand = (float(rmin), tuple(centers[tied[order[0]]]))
        if best is None or cand < best:
            best = cand
    if best is None:  # k >= 1 and singleton balls always cover one point
        raise RuntimeError("enumeration produced no covering candidate")
    radius, center = best
    ball = Ball(np.array(center), radius)
    covered = np.flatnonzero(np.linalg.norm(P - ball.center, axis=1) <= radius + tol)
    return MkebSolution(ball, covered, k)


def outlier_sample_size(d: int, eps: float, delta: float) -> int:
    """Sample size ceil((d+1)/eps**(d+1) * ln(1/delta)), at least 1."""
    if d < 1:
        raise ValueError("d must be at least 1")
    if not 0.0 < eps <= 1.0:
        raise ValueError("eps must lie in (0, 1]")
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    if delta == 1.0:
        return 1
    return max(1, math.ceil((d + 1) / eps ** (d + 1) * math.log(1.0 / delta)))


def outlier_meb_sample(P, eps: float, delta: float, seed: int | None = None) -> MkebSolution:
    """Outlier-tolerant enclosing ball from a uniform sample.

    Draws m = ceil((d+1)/eps**(d+1) * ln(1/delta)) points uniformly with
    replacement and returns the exact enclosing ball of the sample; when m
    reaches n the whole set is used and the result degenerates to the exact
    enclosing ball.  The radius never exceeds the full enclosing radius, and
    with probability at least 1 - delta the ball covers (1-eps)n points.

    The reported target k is ceil((1-eps) * n); ``covered`` holds whatever
    the sampled ball actually covers, which can fall short with probability
    at most delta.
    """
    P = as_points(P)
    n, d = P.shape
    m = outlier_sample_size(d, eps, delta)
    k_target = max(0, math.ceil((1.0 - eps) * n))
    if m >= n:
        solution = exact_meb(P)
    else:
        rng = np.random.default_rng(seed)
        draw = rng.integers(0, n, size=m)
        solution = exact_meb(P[draw])
    ball = solution.ball
    tol = geom_tol(P, ball.center)
    covered = np.flatnonzero(np.linalg.norm(P - ball.center, axis=1) <= ball.radius + tol)
    return MkebSolution(ball, covered, k_target)
