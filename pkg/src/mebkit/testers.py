"""Sampled clusterability testers and exact promise-instance labeling.

The testers answer "does every point fit one translate of a body" and "do the
points fit k translates" by sampling tiny witnesses instead of scanning the
whole set.  Coverable inputs are never rejected; far-from-coverable inputs are
rejected with probability at least 1 - delta.  Rejections always carry a
re-checkable witness sample.

``promise_label`` and ``scattered_points`` are the exact desk-scale deciders
used to classify promise instances (clusterable vs pairwise-scattered).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GuardError
from .geometry import as_points, fits_in_translate, geom_tol
from .meb import exact_meb
from .seeding import derive_rng

ACCEPT = "accept"
REJECT = "reject"

_SCATTER_EXACT_LIMIT = 60   # branch-and-bound ceiling for the public decider
_PROMISE_GUARD = 200        # exact clustering guard for k1 >= 2


@dataclass(frozen=True)
class TestVerdict:
    outcome: str
    witness: np.ndarray | None       # sampled points that failed containment
    witness_indices: np.ndarray | None
    rounds_used: int
    seed: int

    @property
    def accepted(self) -> bool:
        return self.outcome == ACCEPT


@dataclass(frozen=True)
class PromiseLabel:
    yes_holds: bool
    no_holds: bool
    label: str  # YES | NO | BOTH | VIOLATES


@dataclass(frozen=True)
class ScatteredSet:
    count: int
    indices: np.ndarray
    exact: bool  # False when the greedy lower bound was used

    def __post_init__(self):
        object.__setattr__(self, "indices", np.asarray(self.indices, dtype=int))


def _check_unit(value, name):
    if not 0.0 < value <= 1.0:
        raise ValueError(f"{name} must lie in (0, 1], got {value}")


def _rounds(rate: float, delta: float) -> int:
    # ceil((1/rate) * ln(1/delta)); delta = 1 gives zero rounds (vacuous accept)
    if delta == 1.0:
        return 0
    return math.ceil((1.0 / rate) * math.log(1.0 / delta))


def one_s_tester(P, body, eps: float, delta: float, seed: int = 0) -> TestVerdict:
    """Sampled test of "all points fit one translate of the body".

    Runs ceil(eps**-(d+1) * ln(1/delta)) rounds; each round draws d+1
    distinct points and rejects with that sample as witness if no translate
    contains it.  Inputs that fit a translate are always accepted.  When the
    input has fewer than d+1 points the check is run directly on the whole
    set, deterministically.
    """
    P = as_points(P)
    n, d = P.shape
    _check_unit(eps, "eps")
    _check_unit(delta, "delta")
    if n < d + 1:
        ok = fits_in_translate(body, P)
        if ok:
            return TestVerdict(ACCEPT, None, None, 0, seed)
        return TestVerdict(REJECT, P.copy(), np.arange(n), 0, seed)
    rounds = _rounds(eps ** (d + 1), delta)
    for rnd in range(rounds):
        rng = derive_rng(seed, "one-s-round", rnd)
        idx = np.sort(rng.choice(n, size=d + 1, replace=False))
        sample = P[idx]
        if not fits_in_translate(body, sample):
            return TestVerdict(REJECT, sample, idx, rnd + 1, seed)
    return TestVerdict(ACCEPT, None, None, rounds, seed)


def _coverable_by_k(W, body, k: int) -> bool:
    """Exhaustive search for a partition of W into <= k fittable groups."""
    m = len(W)
    groups: list[list[int]] = []

    def place(i: int) -> bool:
        if i == m:
            return True
        for group in groups:
            group.append(i)
            if fits_in_translate(body, W[group]) and place(i + 1):
                return True
            group.pop()
        if len(groups) < k:
            groups.append([i])
            if place(i + 1):
                return True
            groups.pop()
        return False

    return place(0)


def k_g_tester(P, body, k: int, c: float = 0.01, delta: float = 0.1, seed: int = 0) -> TestVerdict:
    """Sampled test of "the points fit k translates of the body".

    Runs ceil((1/c) * ln(1/delta)) rounds; each round draws k+1 distinct
    points and rejects if no partition into at most k groups fits, group by
    group, in a translate of the body.  The witness-density constant ``c``
    depends on the body shape and is supplied by the caller.
    """
    P = as_points(P)
    n, _ = P.shape
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > 8:
        raise GuardError(f"partition enumeration is guarded to k <= 8, got k = {k}")
    if n < k + 1:
        raise ValueError(f"need at least k+1 = {k + 1} points, got {n}")
    _check_unit(c, "c")
    _check_unit(delta, "delta")
    rounds = _rounds(c, delta)
    for rnd in range(rounds):
        rng = derive_rng(seed, "k-g-round", rnd)
        idx = np.sort(rng.choice(n, size=k + 1, replace=False))
        sample = P[idx]
        if not _coverable_by_k(sample, body, k):
            return TestVerdict(REJECT, sample, idx, rnd + 1, seed)
    return TestVerdict(ACCEPT, None, None, rounds, seed)


def _farthest_first_order(P) -> list[int]:
    n = len(P)
    order = [0]
    dist = np.linalg.norm(P - P[0], axis=1)
    for _ in range(n - 1):
        nxt = int(np.argmax(dist))
        order.append(nxt)
        dist = np.minimum(dist, np.linalg.norm(P - P[nxt], axis=1))
    return order


def _clusterable_exact(P, k: int, eps: float) -> bool:
    """Branch and bound: can P be split into k groups of enclosing radius <= eps?"""
    n = len(P)
    tol = geom_tol(P, eps)
    order = _farthest_first_order(P)  # spread-out prefix makes pruning bite early
    pair_limit = 2.0 * eps + tol
    clusters: list[list[int]] = []

    def fits(members: list[int], new_idx: int) -> bool:
        gaps = np.linalg.norm(P[members] - P[new_idx], axis=1)
        if gaps.max() > pair_limit:
            return False  # two members further than a diameter apart
        return exact_meb(P[members + [new_idx]]).ball.radius <= eps + tol

    def assign(i: int) -> bool:
        if i == n:
            return True
        idx = order[i]
        for members in clusters:
            if fits(members, idx):
                members.append(idx)
                if assign(i + 1):
                    return True
                members.pop()
        if len(clusters) < k:
            clusters.append([idx])
            if assign(i + 1):
                return True
            clusters.pop()
        return False

    return assign(0)


def _max_scattered(ok) -> list[int]:
    """Maximum subset of mutually compatible items (branch and bound)."""
    n = ok.shape[0]
    best: list[int] = []

    def grow(candidates: list[int], chosen: list[int]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(candidates) <= len(best):
            return
        for pos, v in enumerate(candidates):
            if len(chosen) + len(candidates) - pos <= len(best):
                return
            chosen.append(v)
            grow([u for u in candidates[pos + 1:] if ok[v, u]], chosen)
            chosen.pop()

    grow(list(range(n)), [])
    return best


def _has_scattered(ok, target: int) -> bool:
    """Is there a mutually compatible subset of at least the target size?"""
    n = ok.shape[0]
    found = False

    def grow(candidates: list[int], size: int) -> bool:
        nonlocal found
        if size >= target:
            found = True
            return True
        if size + len(candidates) < target:
            return False
        for pos, v in enumerate(candidates):
            if size + len(candidates) - pos < target:
                return False
            if grow([u for u in candidates[pos + 1:] if ok[v, u]], size + 1):
                return True
        return False

    return grow(list(range(n)), 0)


def _compat_matrix(P, delta: float) -> np.ndarray:
    gap = np.linalg.norm(P[:, None, :] - P[None, :, :], axis=2)
    ok = gap >= delta - geom_tol(P, delta)
    np.fill_diagonal(ok, False)
    return ok


def scattered_points(P, delta: float) -> ScatteredSet:
    """Largest subset with pairwise distances at least delta.

    Exact by branch and bound for n <= 60; beyond that, a greedy
    farthest-first pass gives a lower bound flagged with ``exact=False``.
    """
    P = as_points(P)
    n = len(P)
    if delta <= 0.0:
        raise ValueError("delta must be positive")
    if n <= _SCATTER_EXACT_LIMIT:
        chosen = _max_scattered(_compat_matrix(P, delta))
        return ScatteredSet(len(chosen), sorted(chosen), True)
    tol = geom_tol(P, delta)
    chosen = [0]
    dist = np.linalg.norm(P - P[0], axis=1)
    while True:
        nxt = int(np.argmax(dist))
        if dist[nxt] < delta - tol:
            break
        chosen.append(nxt)
        dist = np.minimum(dist, np.linalg.norm(P - P[nxt], axis=1))
    return ScatteredSet(len(chosen), sorted(chosen), False)


def _label(yes: bool, no: bool) -> str:
    if yes and no:
        return "BOTH"
    if yes:
        return "YES"
    if no:
        return "NO"
    return "VIOLATES"


def promise_label(P, k1: int, eps: float, k2: int, delta: float) -> PromiseLabel:
    """Exact classification of a promise instance.

    ``yes_holds``: the points split into k1 groups of enclosing radius <= eps
    (decided by the exact enclosing ball for k1 = 1, by exhaustive clustering
    with branch-and-bound pruning for k1 >= 2, guarded to n <= 200).
    ``no_holds``: at least k2 points are pairwise at least delta apart
    (decided exactly with an early-exit subset search).  The label is BOTH
    when both sides hold and VIOLATES when neither does.
    """
    P = as_points(P)
    n = len(P)
    if k1 < 1 or k2 < 1:
        raise ValueError("k1 and k2 must be at least 1")
    if eps <= 0.0 or delta <= 0.0:
        raise ValueError("eps and delta must be positive")
    if k1 >= 2 and n > _PROMISE_GUARD:
        raise GuardError(f"exact {k1}-clustering is guarded to n <= {_PROMISE_GUARD}, got n = {n}")
    if k1 == 1:
        yes = exact_meb(P).ball.radius <= eps + geom_tol(P, eps)
    elif k1 >= n:
        yes = True  # singletons always fit
    else:
        yes = _clusterable_exact(P, k1, eps)
    if k2 > n:
        no = False
    elif k2 == 1:
        no = True  # a single point is vacuously scattered
    else:
        no = _has_scattered(_compat_matrix(P, delta), k2)
    return PromiseLabel(yes, no, _label(yes, no))
