"""Pair-selection lemmas and the deep-point searches built on them.

Two selection procedures drive everything here.  The metric one orders
points by the radius needed to capture three quarters of the set, keeps the
three quarters with the smallest radii, and harvests at least N^2/64 ordered
pairs that are long relative to the kept set's diameter.  The coordinate one
splits a point set by nested medians so that two opposite closed orthants
each retain an N/2^j fraction.  On top of them sit the deep-point searches:
a Monte-Carlo argmax over a bounded region for thick shapes, the exact
median-orthant witness for boxes, a coverage scan that shows the box witness
is essentially optimal, and the chord-crossing scan that shows segments
admit no positive-fraction point at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .geometry import TOL, as_point_set, distance_matrix, subset_diameter, _rng
from .shapes import BOX, PairShape, cover_matrix, is_t_shape
from .depth import DepthReport, pair_depth


# ---------------------------------------------------------------------------
# Diameter selection
# ---------------------------------------------------------------------------


def capture_radii(D) -> np.ndarray:
    """Per-point radius of the smallest closed ball capturing > 3N/4 points.

    For point i this is the (floor(3N/4) + 1)-th smallest entry of row i of
    the distance matrix, counting the zero self-distance.
    """
    M = np.asarray(D, dtype=float)
    N = M.shape[0]
    if N < 2:
        raise ValueError("need at least two points")
    k = (3 * N) // 4
    return np.sort(M, axis=1)[:, k]


def capture_radius(D, i: int) -> float:
    return float(capture_radii(D)[int(i)])


@dataclass
class DiameterSelection:
    """Kept subset, its diameter, and the qualifying long ordered pairs.

    ``qualifying_pairs`` holds ordered index pairs (kept, left-out) whose
    distance is at least a quarter of the kept subset's diameter, up to the
    comparison slack.
    """

    selected: np.ndarray
    radii: np.ndarray = field(repr=False)
    diam_selected: float = 0.0
    qualifying_pairs: np.ndarray = field(default=None, repr=False)
    pair_count: int = 0
    bound: float = 0.0
    bound_met: bool = False


def diameter_selection(D) -> DiameterSelection:
    """Select floor(3N/4) points by ascending capture radius and list all
    ordered (kept, left-out) pairs at distance >= diam(kept)/4.

    Works for any finite metric given as a symmetric matrix; the guarantee
    is at least N^2/64 qualifying pairs.
    """
    M = np.asarray(D, dtype=float)
    N = M.shape[0]
    if N < 2:
        raise ValueError("need at least two points")
    radii = capture_radii(M)
    order = np.argsort(radii, kind="stable")  # ties keep original index order
    keep = (3 * N) // 4
    selected = order[:keep]
    rest = order[keep:]
    d = subset_diameter(M, selected)
    mask = M[np.ix_(selected, rest)] >= d / 4.0 - TOL
    yy, xx = np.nonzero(mask)
    pairs = np.column_stack([selected[yy], rest[xx]])
    bound = N * N / 64.0
    return DiameterSelection(
        selected=np.sort(selected),
        radii=radii,
        diam_selected=float(d),
        qualifying_pairs=pairs,
        pair_count=int(pairs.shape[0]),
        bound=bound,
        bound_met=pairs.shape[0] >= bound - TOL,
    )


# ---------------------------------------------------------------------------
# Deep points for thick shapes
# ---------------------------------------------------------------------------


def tshape_deep_point(
    X, shape: PairShape, t: float, mc_samples: int = 2048, seed: int = 0
) -> DepthReport:
    """Search for a point covered by at least t * N^2 / (2^n * 4^(n+3)) hulls.

    Runs the diameter selection, then evaluates exact ordered-pair depth at
    (i) up to ``mc_samples`` uniform draws from the ball of radius 2d around
    one kept point, rejected unless within d of some kept point, and (ii)
    the midpoints of every qualifying pair.  The argmax candidate (first on
    ties) is reported together with the guarantee it is checked against.
    ``t`` is supplied by the caller so measured and analytic thickness values
    can be compared on equal footing.
    """
    P = as_point_set(X)
    N, n = P.shape
    if not is_t_shape(shape):
        raise ValueError(f"{shape.kind} is not a t-shape; no coverage guarantee holds")
    if not (0.0 < t <= 1.0):
        raise ValueError("t must lie in (0, 1]")
    if N < 2:
        raise ValueError("need at least two points")

    D = distance_matrix(P)
    if D.max() <= 1e-12:
        raise ValueError("zero diameter: all points coincide")

    sel = diameter_selection(D)
    d = sel.diam_selected
    kept_points = P[sel.selected]
    anchor = kept_points[0]

    rng = _rng(seed, 4)
    g = rng.standard_normal((mc_samples, n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    mag = 2.0 * d * rng.random(mc_samples) ** (1.0 / n)
    draws = anchor[None, :] + g * (mag / norms.ravel())[:, None]
    # Keep only draws inside the union of radius-d balls around kept points.
    dist2 = (
        np.sum(draws**2, axis=1)[:, None]
        - 2.0 * draws @ kept_points.T
        + np.sum(kept_points**2, axis=1)[None, :]
    )
    inside = np.min(dist2, axis=1) <= d * d * (1.0 + 1e-12)
    draws = draws[inside]

    mids = 0.5 * (P[sel.qualifying_pairs[:, 0]] + P[sel.qualifying_pairs[:, 1]])
    candidates = np.vstack([draws, mids]) if draws.size else mids

    best_count = -1
    best = None
    for cand in candidates:
        count = pair_depth(cand, shape, P)
        if count > best_count:
            best_count = count
            best = cand

    universe = N * (N - 1)
    bound = t * N * N / (2**n * 4 ** (n + 3))
    return DepthReport(
        witness=best,
        ordered_pair_count=best_count,
        pair_universe=universe,
        fraction=best_count / universe if universe else 0.0,
        bound=bound,
        bound_met=best_count >= bound - TOL,
        bound_name="t*N^2/(2^n*4^(n+3))",
        unordered_pair_count=best_count // 2,
    )


# ---------------------------------------------------------------------------
# Box splitting and the box deep point
# ---------------------------------------------------------------------------


@dataclass
class BoxSplit:
    """Nested-median split thresholds, orientation signs, and side counts."""

    thresholds: np.ndarray
    signs: np.ndarray
    count_side1: int
    count_side2: int
    bound: float
    bound_met: bool
    mask_side1: np.ndarray = field(default=None, repr=False)
    mask_side2: np.ndarray = field(default=None, repr=False)


def _median(values: np.ndarray) -> float:
    # Middle order statistic, or the midpoint of the two middle ones.
    return float(np.median(values))


def box_split(X, j: int) -> BoxSplit:
    """Split X by nested coordinate medians so that both opposite closed
    orthants keep at least N/2^j points.

    Level 1 is a plain median split on the first coordinate.  At level i the
    two working sides are median-split separately on coordinate i; the
    threshold is the average of the two medians and the sign points each
    side at its own median (ties resolve to +1).
    """
    P = as_point_set(X)
    N, n = P.shape
    if not (1 <= j <= n):
        raise ValueError(f"j must lie in 1..{n}")
    if N < 1:
        raise ValueError("need at least one point")

    thresholds = np.empty(j)
    signs = np.empty(j, dtype=int)
    mask1 = np.ones(N, dtype=bool)
    mask2 = np.ones(N, dtype=bool)
    for level in range(j):
        col = P[:, level]
        if level == 0:
            z = _median(col)
            eps = 1
        else:
            z1 = _median(col[mask1])
            z2 = _median(col[mask2])
            z = 0.5 * (z1 + z2)
            eps = 1 if z1 <= z2 else -1
        thresholds[level] = z
        signs[level] = eps
        mask1 &= eps * (col - z) <= 0.0
        mask2 &= eps * (col - z) >= 0.0

    c1 = int(np.count_nonzero(mask1))
    c2 = int(np.count_nonzero(mask2))
    bound = N / 2**j
    return BoxSplit(
        thresholds=thresholds,
        signs=signs,
        count_side1=c1,
        count_side2=c2,
        bound=bound,
        bound_met=min(c1, c2) * 2**j >= N,
        mask_side1=mask1,
        mask_side2=mask2,
    )


def box_deep_point(X) -> DepthReport:
    """The nested-median split point and its exact box-coverage count.

    The witness z lands in the minimal box of every pair with one point in
    each opposite orthant, which yields at least (N/2^n)(N/2^n - 1) distinct
    pairs; the cross-pair containment is rechecked exactly, and both the
    unordered and ordered counts are reported.
    """
    P = as_point_set(X)
    N, n = P.shape
    split = box_split(P, n)
    z = split.thresholds.copy()

    side1 = P[split.mask_side1]
    at_z = np.all(P == z[None, :], axis=1)
    side2 = P[split.mask_side2 & ~at_z]
    if side1.shape[0] and side2.shape[0]:
        covered = cover_matrix(BOX, z, side1, side2)
        if not np.all(covered):
            raise AssertionError("split point escaped a cross-pair box")

    ordered = pair_depth(z, BOX, P)
    unordered = ordered // 2
    universe = N * (N - 1)
    bound = (N / 2**n) * (N / 2**n - 1)
    return DepthReport(
        witness=z,
        ordered_pair_count=ordered,
        pair_universe=universe,
        fraction=ordered / universe if universe else 0.0,
        bound=bound,
        bound_met=unordered >= bound - TOL,
        bound_name="(N/2^n)*(N/2^n-1)",
        unordered_pair_count=unordered,
    )


# ---------------------------------------------------------------------------
# Box coverage scan (how good can any point be?)
# ---------------------------------------------------------------------------


@dataclass
class BoxCoverageScan:
    """Maximum observed box-coverage fraction over a candidate sweep."""

    dim: int
    count: int
    max_fraction: float
    witness: np.ndarray
    candidates_evaluated: int
    ceiling: float  # 1/2^n, the fraction no point can beat by more than eps


def _box_class_counts(Z: np.ndarray, P: np.ndarray) -> np.ndarray:
    # Classify every data point per candidate: below/equal/above each
    # coordinate threshold, encoded base 3.
    B, n = Z.shape
    classes = np.zeros((B, P.shape[0]), dtype=np.int32)
    power = 1
    for c in range(n):
        col = P[:, c][None, :]
        zc = Z[:, c][:, None]
        state = (col > zc).astype(np.int32) + (col >= zc).astype(np.int32)
        classes += power * state
        power *= 3
    n_classes = 3**n
    offsets = (np.arange(B, dtype=np.int64) * n_classes)[:, None]
    flat = (classes.astype(np.int64) + offsets).ravel()
    return np.bincount(flat, minlength=B * n_classes).reshape(B, n_classes)


def _box_compatibility(n: int) -> tuple[np.ndarray, int]:
    # K[c, c'] = 1 iff sides s, s' in {-1,0,1}^n satisfy s_i * s'_i <= 0 for
    # all i, i.e. the two points straddle the candidate in every coordinate.
    n_classes = 3**n
    digits = np.empty((n_classes, n), dtype=np.int64)
    idx = np.arange(n_classes)
    for c in range(n):
        digits[:, c] = idx % 3
        idx = idx // 3
    sides = digits - 1
    K = np.all(sides[:, None, :] * sides[None, :, :] <= 0, axis=2).astype(np.int64)
    zero_class = int(np.sum(3 ** np.arange(n)))
    return K, zero_class


def box_pair_depth_many(Z, X) -> np.ndarray:
    """Exact ordered-distinct box pair depth for many candidates at once."""
    P = as_point_set(X)
    Q = as_point_set(Z, dim=P.shape[1])
    K, zero_class = _box_compatibility(P.shape[1])
    counts = _box_class_counts(Q, P)
    total = np.einsum("bc,cd,bd->b", counts, K, counts)
    return total - counts[:, zero_class]


def box_max_fraction(
    dim: int, count: int, candidates: int = 100_000, seed: int = 0, batch: int = 4096
) -> BoxCoverageScan:
    """Draw a uniform-cube instance and scan for the best-covered point.

    Candidates are the data points themselves, coordinate combinations of
    random data points (the coverage count is piecewise constant on that
    grid), and uniform draws, up to ``candidates`` total.  Returns the
    maximum ordered-distinct coverage fraction; no candidate should exceed
    1/2^n by more than sampling noise.
    """
    if dim < 1 or count < 2:
        raise ValueError("need dim >= 1 and count >= 2")
    rng = _rng(seed, 5)
    P = rng.random((count, dim))

    pools = [P]
    budget = max(int(candidates) - count, 0)
    n_grid = budget // 2
    if n_grid > 0:
        idx = rng.integers(0, count, size=(n_grid, dim))
        pools.append(P[idx, np.arange(dim)[None, :]])
    n_rand = budget - n_grid
    if n_rand > 0:
        pools.append(rng.random((n_rand, dim)))
    Z = np.vstack(pools)

    universe = count * (count - 1)
    best_val = -1
    best_at = 0
    for start in range(0, Z.shape[0], batch):
        chunk = Z[start : start + batch]
        depths = box_pair_depth_many(chunk, P)
        k = int(np.argmax(depths))
        if depths[k] > best_val:
            best_val = int(depths[k])
            best_at = start + k
    return BoxCoverageScan(
        dim=dim,
        count=count,
        max_fraction=best_val / universe,
        witness=Z[best_at],
        candidates_evaluated=int(Z.shape[0]),
        ceiling=1.0 / 2**dim,
    )


# ---------------------------------------------------------------------------
# Segment negative control
# ---------------------------------------------------------------------------


@dataclass
class SegmentDepthScan:
    """Maximum number of chords through any proper chord crossing."""

    max_sets: int
    witness: np.ndarray
    crossings_evaluated: int
    chord_count: int


def _cross2(o, a, b):
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (
        a[..., 1] - o[..., 1]
    ) * (b[..., 0] - o[..., 0])


def segment_max_depth(X, batch: int = 2048) -> SegmentDepthScan:
    """Scan every proper crossing of two endpoint-disjoint chords of X and
    report the largest number of chords (unordered pairs) through any of
    them.

    For points in general position every such crossing lies on exactly the
    two chords that created it, so the maximum stays at 2 no matter how
    large X grows; that is what rules segments out as hulls with a
    positive-fraction point.
    """
    P = as_point_set(X, dim=2)
    N = P.shape[0]
    if N < 4:
        raise ValueError("need at least four points to cross two chords")

    quads = np.array(list(itertools.combinations(range(N), 4)), dtype=int)
    crossings = []
    # Of the three pairings of four points into two chords, test each for a
    # proper (interior) crossing.
    for a_i, b_i, c_i, d_i in ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)):
        a, b = P[quads[:, a_i]], P[quads[:, b_i]]
        c, d = P[quads[:, c_i]], P[quads[:, d_i]]
        o1 = _cross2(a, b, c)
        o2 = _cross2(a, b, d)
        o3 = _cross2(c, d, a)
        o4 = _cross2(c, d, b)
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        if not np.any(proper):
            continue
        aa, bb, cc, dd = a[proper], b[proper], c[proper], d[proper]
        denom = _cross2(aa, bb, aa + (dd - cc))
        s = _cross2(aa, cc, aa + (dd - cc)) / denom
        crossings.append(aa + s[:, None] * (bb - aa))
    if not crossings:
        return SegmentDepthScan(0, np.empty(2), 0, N * (N - 1) // 2)
    Z = np.vstack(crossings)

    ends = np.array(list(itertools.combinations(range(N), 2)), dtype=int)
    A = P[ends[:, 0]]
    Bp = P[ends[:, 1]]
    V = Bp - A
    vv = np.einsum("en,en->e", V, V)

    best_val = -1
    best_at = 0
    for start in range(0, Z.shape[0], batch):
        chunk = Z[start : start + batch]
        W = chunk[:, None, :] - A[None, :, :]
        t = np.einsum("ben,en->be", W, V) / vv[None, :]
        perp2 = np.einsum("ben,ben->be", W, W) - t * t * vv[None, :]
        np.maximum(perp2, 0.0, out=perp2)
        on = (perp2 <= TOL * TOL * vv[None, :]) & (t >= -TOL) & (t <= 1.0 + TOL)
        counts = np.count_nonzero(on, axis=1)
        k = int(np.argmax(counts))
        if counts[k] > best_val:
            best_val = int(counts[k])
            best_at = start + k
    return SegmentDepthScan(
        max_sets=best_val,
        witness=Z[best_at],
        crossings_evaluated=int(Z.shape[0]),
        chord_count=int(ends.shape[0]),
    )
