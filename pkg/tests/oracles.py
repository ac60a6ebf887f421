"""Independent brute-force oracles the fast implementations are tested against.

Everything here favors obviousness over speed: candidate enumeration with
plain linear algebra, order statistics for coverage radii, LP feasibility
plus face enumeration for hull distances.  Nothing imports solver internals.
"""

import itertools
import math

import numpy as np
from scipy.optimize import linprog


def candidate_centers(P):
    """Circumcenters of every affinely independent subset of size 1..d+1.

    The minimax objective (and its k-th order-statistic variant) always
    attains its optimum at one of these, so enumerating them needs no
    tolerance knobs downstream.
    """
    P = np.asarray(P, dtype=float)
    n, d = P.shape
    centers = [P.copy()]
    for size in range(2, min(n, d + 1) + 1):
        combos = np.array(list(itertools.combinations(range(n), size)))
        S = P[combos]                      # (k, size, d)
        B = S[:, 1:, :] - S[:, :1, :]      # edge vectors from the first vertex
        G = B @ B.transpose(0, 2, 1)
        rhs = 0.5 * np.einsum("kij,kij->ki", B, B)
        det = np.linalg.det(G)
        scale = np.einsum("kii->k", G) / (size - 1) + 1e-300
        ok = np.abs(det) > 1e-12 * scale ** (size - 1)
        if not np.any(ok):
            continue
        y = np.linalg.solve(G[ok], rhs[ok][..., None])[..., 0]
        centers.append(S[ok, 0, :] + np.einsum("ki,kid->kd", y, B[ok]))
    return np.vstack(centers)


def meb_oracle(P):
    """(center, radius) minimizing the farthest-point distance."""
    P = np.asarray(P, dtype=float)
    C = candidate_centers(P)
    far = np.sqrt(((P[None, :, :] - C[:, None, :]) ** 2).sum(axis=2)).max(axis=1)
    best = int(np.argmin(far))
    return C[best], float(far[best])


def mkeb_oracle(P, k):
    """(center, radius) minimizing the k-th smallest distance to the set."""
    P = np.asarray(P, dtype=float)
    C = candidate_centers(P)
    dist = np.sqrt(((P[None, :, :] - C[:, None, :]) ** 2).sum(axis=2))
    kth = np.partition(dist, k - 1, axis=1)[:, k - 1]
    best = int(np.argmin(kth))
    return C[best], float(kth[best])


def _face_distance(a, Q):
    """Distance from a to conv(Q) by projecting onto every face.

    Complete on its own: any nearest hull point lies in some simplex of at
    most d+1 vertices with nonnegative barycentric weights.
    """
    n, d = Q.shape
    best = np.inf
    for size in range(1, min(n, d + 1) + 1):
        for combo in itertools.combinations(range(n), size):
            S = Q[list(combo)]
            if size == 1:
                proj = S[0]
            else:
                B = S[1:] - S[0]
                G = B @ B.T
                try:
                    y = np.linalg.solve(G, B @ (a - S[0]))
                except np.linalg.LinAlgError:
                    continue
                w = np.concatenate([[1.0 - y.sum()], y])
                if np.any(w < -1e-9):      # projection leaves the face
                    continue
                proj = S[0] + B.T @ y
            best = min(best, float(np.linalg.norm(a - proj)))
    return best


def hull_distance_oracle(a, Q):
    """Distance from a to conv(Q): LP membership, then face enumeration."""
    a = np.asarray(a, dtype=float)
    Q = np.asarray(Q, dtype=float)
    n, d = Q.shape
    # feasibility of  Q^T w = a, sum w = 1, w >= 0
    A_eq = np.vstack([Q.T, np.ones(n)])
    b_eq = np.concatenate([a, [1.0]])
    lp = linprog(np.zeros(n), A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * n, method="highs")
    if lp.status == 0:
        return 0.0
    return _face_distance(a, Q)


def nodim_oracle(P, a, r):
    """Smallest hull distance achievable by any r-subset."""
    P = np.asarray(P, dtype=float)
    a = np.asarray(a, dtype=float)
    n = len(P)
    return min(
        _face_distance(a, P[list(combo)])
        for combo in itertools.combinations(range(n), min(r, n))
    )


def scattered_oracle(P, delta):
    """Maximum number of points with pairwise distances >= delta (exact).

    Subset DP on the conflict graph (edges join pairs closer than delta):
    take the lowest vertex or skip it.
    """
    P = np.asarray(P, dtype=float)
    n = len(P)
    if n > 22:
        raise ValueError("oracle is exponential; keep n <= 22")
    gap = np.linalg.norm(P[:, None, :] - P[None, :, :], axis=2)
    ok = gap >= delta - 1e-9 * (1.0 + float(np.abs(P).max()))
    conflict = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and not ok[i, j]:
                conflict[i] |= 1 << j
    dp = [0] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        without = dp[mask & (mask - 1)]
        with_v = 1 + dp[mask & ~(conflict[v] | 1 << v)]
        dp[mask] = max(without, with_v)
    return dp[(1 << n) - 1]


def diameter_oracle(P):
    P = np.asarray(P, dtype=float)
    return float(np.linalg.norm(P[:, None, :] - P[None, :, :], axis=2).max())


def coverable_oracle(P, radius, k, meb_radius):
    """Can P be covered by k balls of the given radius?  Exact, tiny n only.

    meb_radius: callable returning the enclosing radius of a subset.
    """
    P = np.asarray(P, dtype=float)
    n = len(P)
    groups: list[list[int]] = []

    def place(i):
        if i == n:
            return True
        for g in groups:
            g.append(i)
            if meb_radius(P[g]) <= radius + 1e-12:
                if place(i + 1):
                    return True
            g.pop()
        if len(groups) < k:
            groups.append([i])
            if place(i + 1):
                return True
            groups.pop()
        return False

    return place(0)


def kth_radius(P, center, k):
    d = np.linalg.norm(np.asarray(P, float) - np.asarray(center, float), axis=1)
    return float(np.partition(d, k - 1)[k - 1])
