"""Independent brute-force reference implementations used by the tests.

Everything here is deliberately written from scratch against the defining
inequalities (plain Python loops, subset enumeration, dense direction grids)
and shares no code path with the library, so agreement is evidence rather
than tautology.
"""

import itertools
import math

import numpy as np

SEG_TOL = 1e-9


def member_oracle(kind, param, z, x, y):
    """Scalar membership re-implementation, one branch per defining inequality."""
    n = len(z)
    if all(x[i] == y[i] for i in range(n)):
        return all(z[i] == x[i] for i in range(n))
    if kind == "ball":
        return sum((x[i] - z[i]) * (y[i] - z[i]) for i in range(n)) <= 0.0
    if kind == "lens":
        u = [x[i] - z[i] for i in range(n)]
        w = [y[i] - z[i] for i in range(n)]
        nu = math.sqrt(sum(c * c for c in u))
        nw = math.sqrt(sum(c * c for c in w))
        if nu == 0.0 or nw == 0.0:
            return True
        cos = sum(u[i] * w[i] for i in range(n)) / (nu * nw)
        cos = max(-1.0, min(1.0, cos))
        return math.acos(cos) >= param
    if kind == "ellipsoid":
        dx = math.sqrt(sum((z[i] - x[i]) ** 2 for i in range(n)))
        dy = math.sqrt(sum((z[i] - y[i]) ** 2 for i in range(n)))
        dxy = math.sqrt(sum((x[i] - y[i]) ** 2 for i in range(n)))
        return dx + dy <= (1.0 + param) * dxy
    if kind == "box":
        return all(min(x[i], y[i]) <= z[i] <= max(x[i], y[i]) for i in range(n))
    if kind == "segment":
        v = [y[i] - x[i] for i in range(n)]
        vv = sum(c * c for c in v)
        length = math.sqrt(vv)
        t = sum((z[i] - x[i]) * v[i] for i in range(n)) / vv
        perp2 = sum((z[i] - x[i]) ** 2 for i in range(n)) - t * t * vv
        return perp2 <= (SEG_TOL * length) ** 2 and -SEG_TOL <= t <= 1.0 + SEG_TOL
    raise ValueError(kind)


def pair_depth_oracle(kind, param, z, A, B=None):
    """Triple-loop ordered-pair count; B=None means distinct pairs of A."""
    z = list(map(float, z))
    rows_a = [list(map(float, row)) for row in A]
    rows_b = rows_a if B is None else [list(map(float, row)) for row in B]
    count = 0
    for i, a in enumerate(rows_a):
        for j, b in enumerate(rows_b):
            if B is None and i == j:
                continue
            if member_oracle(kind, param, z, a, b):
                count += 1
    return count


def distance_oracle(a, b):
    return math.sqrt(sum((ai - bi) ** 2 for ai, bi in zip(a, b)))


def diameter_oracle(X):
    rows = [list(map(float, row)) for row in X]
    best = 0.0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            best = max(best, distance_oracle(rows[i], rows[j]))
    return best


def tukey_depth_2d_oracle(z, X, grid=3600):
    """Closed-halfplane depth via a dense direction grid plus all critical
    normals of z-to-point vectors."""
    V = np.asarray(X, dtype=float) - np.asarray(z, dtype=float)[None, :]
    thetas = [2.0 * math.pi * k / grid for k in range(grid)]
    for row in V:
        if row[0] != 0.0 or row[1] != 0.0:
            ang = math.atan2(row[1], row[0])
            thetas.extend([ang + math.pi / 2, ang - math.pi / 2])
    dirs = np.array([[math.cos(t), math.sin(t)] for t in thetas])
    counts = (V @ dirs.T >= 0.0).sum(axis=0)
    return int(counts.min())


def in_hull_oracle(p, S, tol=1e-7):
    """Is p a convex combination of the rows of S?  Least-squares barycentric
    solve; exact for affinely independent S, which random instances are."""
    S = np.asarray(S, dtype=float)
    k = S.shape[0]
    A = np.vstack([S.T, np.ones(k)])
    b = np.append(np.asarray(p, dtype=float), 1.0)
    lam, *_ = np.linalg.lstsq(A, b, rcond=None)
    return np.allclose(A @ lam, b, atol=tol) and np.all(lam >= -tol)


def radon_partition_oracle(point, P, tol=1e-7):
    """Does some 2-partition of P put ``point`` in both hulls?"""
    P = np.asarray(P, dtype=float)
    m = P.shape[0]
    for bits in range(1, 2**m - 1):
        side = [i for i in range(m) if bits & (1 << i)]
        rest = [i for i in range(m) if not bits & (1 << i)]
        if in_hull_oracle(point, P[side], tol) and in_hull_oracle(point, P[rest], tol):
            return True
    return False


def uncovered_graph_oracle(kind, param, X, T):
    """Double loop over pairs and net points."""
    rows = [list(map(float, row)) for row in X]
    net = [list(map(float, row)) for row in T]
    n = len(rows)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            covered = any(member_oracle(kind, param, t, rows[i], rows[j]) for t in net)
            if not covered:
                adj[i, j] = adj[j, i] = True
    return adj


def clique_number_oracle(adj):
    """Exact clique number by subset dynamic programming over all 2^n masks.

    A mask is a clique iff mask minus its lowest vertex is a clique and that
    vertex is adjacent to everything else in the mask.
    """
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    if n == 0:
        return 0
    neighbor_mask = np.zeros(n, dtype=np.int64)
    for v in range(n):
        mask = 0
        for u in np.nonzero(adj[v])[0]:
            if u != v:
                mask |= 1 << int(u)
        neighbor_mask[v] = mask

    is_clique = np.zeros(1 << n, dtype=bool)
    is_clique[0] = True
    for b in range(n - 1, -1, -1):
        rest = np.arange(1 << (n - 1 - b), dtype=np.int64) << (b + 1)
        ok = is_clique[rest] & ((rest & ~neighbor_mask[b]) == 0)
        is_clique[rest | (1 << b)] = ok

    pop = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        pop = np.concatenate([pop, pop + 1])
    return int(pop[is_clique].max())


def is_clique_oracle(adj, vertices):
    adj = np.asarray(adj, dtype=bool)
    return all(adj[u, v] for u, v in itertools.combinations(vertices, 2))


def violating_subset_exists_oracle(adj, size):
    """Exhaustive check over all ``size``-subsets for a clique."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    neighbor_or_self = np.zeros(n, dtype=np.int64)
    for v in range(n):
        mask = 1 << v
        for u in np.nonzero(adj[v])[0]:
            mask |= 1 << int(u)
        neighbor_or_self[v] = mask
    combos = np.array(list(itertools.combinations(range(n), size)), dtype=np.int64)
    masks = np.zeros(combos.shape[0], dtype=np.int64)
    for c in range(size):
        masks |= np.int64(1) << combos[:, c]
    closed = neighbor_or_self[combos]  # (C, size)
    ok = np.all((closed & masks[:, None]) == masks[:, None], axis=1)
    return bool(np.any(ok))
