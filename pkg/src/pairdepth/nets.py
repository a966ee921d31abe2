"""Greedy weak epsilon-nets for thin hulls, certified by exact clique search.

A finite net T intersects the thin hull of every large subset A exactly when
A is not a clique of the "uncovered graph": the graph on the data points
whose edges are the pairs {x, y} with S(x, y) missed by every net point.
The builder therefore alternates an exact maximum-clique search (the
certifier) with a deep-point insertion (the coverage step) until no clique
of the threshold size survives.  Each insertion kills at least one uncovered
pair, and the per-iteration kill counts yield an empirical version of the
quadratic net-size bound that is recorded alongside the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_point_set
from .shapes import PairShape, cover_matrix, is_t_shape, lens
from .selection import tshape_deep_point

DEFAULT_EXACT_LIMIT = 64


@dataclass
class UncoveredGraph:
    """Symmetric boolean adjacency over data-point indices; an edge means the
    pair's hull avoids every current net point."""

    adjacency: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def edges(self) -> np.ndarray:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return np.column_stack([i, j])


def _complete_adjacency(n: int) -> np.ndarray:
    adj = np.ones((n, n), dtype=bool)
    np.fill_diagonal(adj, False)
    return adj


def uncovered_graph(X, T, shape: PairShape) -> UncoveredGraph:
    """Edges are the distinct pairs {i, j} with S(x_i, x_j) disjoint from T."""
    P = as_point_set(X)
    adj = _complete_adjacency(P.shape[0])
    for t in np.atleast_2d(np.asarray(T, dtype=float)) if len(T) else []:
        covered = cover_matrix(shape, t, P, P)
        covered |= covered.T  # symmetric hulls: either orientation counts
        adj &= ~covered
    np.fill_diagonal(adj, False)
    return UncoveredGraph(adj)


# ---------------------------------------------------------------------------
# Exact maximum clique (branch and bound with greedy coloring)
# ---------------------------------------------------------------------------


class _CutoffHit(Exception):
    def __init__(self, clique):
        self.clique = clique


def _greedy_color(cand: int, adj: list[int]) -> tuple[list[int], list[int]]:
    # Color candidates greedily; vertices come back in ascending color order,
    # so colors[i] bounds the clique size attainable from order[: i + 1].
    order: list[int] = []
    colors: list[int] = []
    color = 0
    remaining = cand
    while remaining:
        color += 1
        available = remaining
        while available:
            low = available & -available
            v = low.bit_length() - 1
            order.append(v)
            colors.append(color)
            remaining ^= low
            available = (available ^ low) & ~adj[v]
    return order, colors


def max_clique(
    graph, cutoff: int | None = None, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> list[int]:
    """Exact maximum clique of a small graph, as a sorted vertex list.

    With ``cutoff`` the search stops at the first clique of that size, which
    is all certification needs; a result smaller than the cutoff is still the
    exact maximum.  Instances larger than ``exact_limit`` are refused: grow
    the limit explicitly or certify by subset sampling instead.
    """
    adj_matrix = graph.adjacency if isinstance(graph, UncoveredGraph) else np.asarray(graph, dtype=bool)
    n = adj_matrix.shape[0]
    if n > exact_limit:
        raise ValueError(
            f"exact clique search is limited to {exact_limit} vertices (got {n}); "
            "raise exact_limit or certify by sampling subsets"
        )
    if n == 0:
        return []
    adj = [0] * n
    for i in range(n):
        mask = 0
        for j in np.nonzero(adj_matrix[i])[0]:
            if j != i:
                mask |= 1 << int(j)
        adj[i] = mask

    best: list[int] = []

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best
        order, colors = _greedy_color(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + colors[i] <= len(best):
                return
            v = order[i]
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = clique.copy()
                if cutoff is not None and len(best) >= cutoff:
                    raise _CutoffHit(best)
            clique.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << n) - 1)
    except _CutoffHit as hit:
        return sorted(hit.clique)
    return sorted(best)


# ---------------------------------------------------------------------------
# Greedy net construction
# ---------------------------------------------------------------------------


@dataclass
class NetResult:
    """A weak epsilon-net for thin hulls plus its certification record.

    ``certified`` means the final uncovered graph was proven (exact clique
    search) to contain no clique of size ceil(epsilon * N).  ``lambda_used``
    is the coverage rate assumed for the iteration cap; ``lambda_emp`` is the
    worst per-iteration rate actually achieved, measured in newly covered
    ordered pairs per (epsilon * N)^2.
    """

    points: np.ndarray
    epsilon: float
    shape: PairShape
    t: float
    certified: bool
    witness_clique: list[int] | None
    iterations: int
    lambda_used: float
    lambda_emp: float | None
    iteration_cap: int
    deep_point_shortfalls: int
    final_clique_size: int
    uncovered_edges: int


def subset_threshold(epsilon: float, n_points: int) -> int:
    """ceil(epsilon * N) with protection against float round-up artifacts."""
    return int(math.ceil(epsilon * n_points - 1e-9))


def weak_net(
    X,
    epsilon: float,
    shape: PairShape,
    t: float,
    seed: int = 0,
    mc_samples: int = 512,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> NetResult:
    """Build a net meeting the thin hull of every subset of size >= epsilon*N.

    Loop: find a maximum clique of the uncovered graph; if it is smaller than
    ceil(epsilon*N), stop certified.  Otherwise plant the deep point of the
    clique (it covers many of the clique's own pairs, all currently
    uncovered) and repeat.  A deep point falling short of the guaranteed
    coverage lambda*(epsilon*N)^2 is retried with four times the samples up
    to three times, then the best point found is accepted; it still kills at
    least one pair, so the loop terminates.  The iteration cap is four times
    the quadratic bound implied by lambda = t / (2^n * 4^(n+3)); exceeding it
    returns an uncertified result with the blocking clique attached.
    """
    P = as_point_set(X)
    N, dim = P.shape
    if shape.kind == "segment":
        raise ValueError(
            "segments admit no positive-fraction deep point, so this greedy "
            "construction has no termination guarantee; refusing"
        )
    if not is_t_shape(shape):
        raise ValueError(f"{shape.kind} is not a t-shape; no net guarantee holds")
    if not (0.0 < epsilon <= 1.0):
        raise ValueError("epsilon must lie in (0, 1]")
    if not (0.0 < t <= 1.0):
        raise ValueError("t must lie in (0, 1]")
    cutoff = subset_threshold(epsilon, N)
    if cutoff < 2:
        raise ValueError("epsilon * N must round up to at least 2")

    lam = t / (2**dim * 4 ** (dim + 3))
    cap = int(math.ceil(1.0 / (lam * epsilon**2))) * 4
    target = lam * (epsilon * N) ** 2

    adj = _complete_adjacency(N)
    net: list[np.ndarray] = []
    shortfalls = 0
    lambda_emp: float | None = None

    while True:
        clique = max_clique(adj, cutoff=cutoff, exact_limit=exact_limit)
        if len(clique) < cutoff:
            return NetResult(
                points=np.array(net) if net else np.empty((0, dim)),
                epsilon=epsilon,
                shape=shape,
                t=t,
                certified=True,
                witness_clique=None,
                iterations=len(net),
                lambda_used=lam,
                lambda_emp=lambda_emp,
                iteration_cap=cap,
                deep_point_shortfalls=shortfalls,
                final_clique_size=len(clique),
                uncovered_edges=int(adj.sum()) // 2,
            )
        if len(net) >= cap:
            return NetResult(
                points=np.array(net),
                epsilon=epsilon,
                shape=shape,
                t=t,
                certified=False,
                witness_clique=clique,
                iterations=len(net),
                lambda_used=lam,
                lambda_emp=lambda_emp,
                iteration_cap=cap,
                deep_point_shortfalls=shortfalls,
                final_clique_size=len(clique),
                uncovered_edges=int(adj.sum()) // 2,
            )

        subset = P[clique]
        best = None
        samples = mc_samples
        for _ in range(4):
            report = tshape_deep_point(
                subset, shape, t, mc_samples=samples, seed=seed + 7919 * len(net) + samples
            )
            if best is None or report.ordered_pair_count > best.ordered_pair_count:
                best = report
            if best.ordered_pair_count >= target - 1e-9:
                break
            samples *= 4
        if best.ordered_pair_count < target - 1e-9:
            shortfalls += 1

        covered = cover_matrix(shape, best.witness, P, P)
        covered |= covered.T
        new_adj = adj & ~covered
        np.fill_diagonal(new_adj, False)
        if not np.all(new_adj <= adj):
            raise AssertionError("uncovered graph grew; predicate is inconsistent")
        newly_ordered = int(adj.sum()) - int(new_adj.sum())
        if newly_ordered < 2:
            raise AssertionError("deep point covered no uncovered pair")
        rate = newly_ordered / (epsilon * N) ** 2
        lambda_emp = rate if lambda_emp is None else min(lambda_emp, rate)
        net.append(np.asarray(best.witness, dtype=float))
        adj = new_adj


def lens_net(
    X,
    epsilon: float,
    alpha: float,
    t: float,
    seed: int = 0,
    mc_samples: int = 512,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> NetResult:
    """Weak net for lenses of opening angle alpha in [0, pi).

    Certification uses the closed angle predicate (angle >= alpha); the
    strict variant differs only on the measure-zero boundary.
    """
    if not (0.0 <= alpha < np.pi):
        raise ValueError("alpha must lie in [0, pi)")
    return weak_net(
        X, epsilon, lens(alpha), t, seed=seed, mc_samples=mc_samples, exact_limit=exact_limit
    )
