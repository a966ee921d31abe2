"""Point sets, seeded generators, and metric primitives.

A point in R^n is a length-n float64 array; a point set is an (N, n) array
with one point per row.  Distance matrices are dense (N, N) float64 arrays.
All randomness goes through numpy's PCG64 generator (``numpy.random.default_rng``)
so that every fixture is reproducible bit for bit across platforms and runs.
"""

from __future__ import annotations

import warnings

import numpy as np

# Slack used when an exact integer count is compared against a float bound,
# and for closed geometric comparisons that must survive round-off.
TOL = 1e-9

GENERATOR_KINDS = ("uniform-cube", "gaussian", "circle", "grid")

_REDRAW_LIMIT = 100


def as_point(p) -> np.ndarray:
    """Validate and return a single point as a 1-D float64 array."""
    a = np.asarray(p, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise ValueError(f"point must be a non-empty 1-D sequence, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("point has non-finite coordinates")
    return a


def as_point_set(X, dim: int | None = None) -> np.ndarray:
    """Validate and return a point set as an (N, dim) float64 array."""
    a = np.asarray(X, dtype=float)
    if a.ndim == 1:
        # Accept a bare list of 1-D points only when dim says so.
        if dim == 1:
            a = a.reshape(-1, 1)
        else:
            raise ValueError("point set must be 2-D: one point per row")
    if a.ndim != 2 or a.shape[1] < 1:
        raise ValueError(f"point set must have shape (N, n) with n >= 1, got {a.shape}")
    if dim is not None and a.shape[1] != dim:
        raise ValueError(f"expected dimension {dim}, got {a.shape[1]}")
    if not np.all(np.isfinite(a)):
        raise ValueError("point set has non-finite coordinates")
    return a


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two points of equal dimension."""
    pa, pb = as_point(a), as_point(b)
    if pa.shape != pb.shape:
        raise ValueError(f"dimension mismatch: {pa.shape[0]} vs {pb.shape[0]}")
    return float(np.sqrt(np.sum((pa - pb) ** 2)))


def distance_matrix(X) -> np.ndarray:
    """All-pairs Euclidean distances of a point set, as a dense (N, N) array."""
    P = as_point_set(X)
    sq = np.sum(P * P, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (P @ P.T)
    np.maximum(d2, 0.0, out=d2)
    D = np.sqrt(d2)
    np.fill_diagonal(D, 0.0)
    # Symmetrize: the quadratic expansion is not exactly symmetric in floats.
    return 0.5 * (D + D.T)


def validate_distance_matrix(D, check_triangle: bool = True) -> np.ndarray:
    """Validate a metric matrix: square, symmetric, zero diagonal, nonnegative.

    The triangle inequality is checked to within ``TOL`` and violations only
    warn; near-metric inputs (for example, noisy measured distances) are still
    usable by the selection routines.
    """
    M = np.asarray(D, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"distance matrix must be square, got {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("distance matrix has non-finite entries")
    if np.any(M < 0):
        raise ValueError("distance matrix has negative entries")
    if np.any(np.abs(np.diag(M)) > 0):
        raise ValueError("distance matrix has a nonzero diagonal")
    if not np.array_equal(M, M.T):
        if np.max(np.abs(M - M.T)) > TOL:
            raise ValueError("distance matrix is not symmetric")
        M = 0.5 * (M + M.T)
    if check_triangle:
        n = M.shape[0]
        worst = 0.0
        for k in range(n):
            worst = max(worst, float(np.max(M - (M[:, k : k + 1] + M[None, k, :]))))
        if worst > TOL:
            warnings.warn(
                f"triangle inequality violated by up to {worst:.3g}", stacklevel=2
            )
    return M


def _rng(seed, *stream) -> np.random.Generator:
    """PCG64 generator keyed by (seed, *stream) so substreams never collide."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


def _draw(kind: str, dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    if kind == "uniform-cube":
        return rng.random((count, dim))
    if kind == "gaussian":
        return rng.standard_normal((count, dim))
    if kind == "circle":
        theta = rng.random(count) * (2.0 * np.pi)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    raise ValueError(f"unknown generator kind {kind!r}")


def generate_points(kind: str, dim: int, count: int, seed: int) -> np.ndarray:
    """Generate a reproducible point set with pairwise-distinct rows.

    Kinds: ``uniform-cube`` (uniform on [0,1]^n), ``gaussian`` (standard
    normal), ``circle`` (unit circle at random angles, n = 2 only), and
    ``grid`` (the first ``count`` nodes of the smallest lattice over [0,1]^n,
    independent of the seed).  Random kinds redraw colliding rows; exceeding
    the redraw limit is an error.
    """
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"kind must be one of {GENERATOR_KINDS}, got {kind!r}")
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    if kind == "circle" and dim != 2:
        raise ValueError("circle generator requires dimension 2")
    if count == 0:
        return np.empty((0, dim), dtype=float)

    if kind == "grid":
        side = 1
        while side**dim < count:
            side += 1
        axis = np.linspace(0.0, 1.0, side) if side > 1 else np.array([0.5])
        mesh = np.meshgrid(*([axis] * dim), indexing="ij")
        pts = np.column_stack([m.ravel() for m in mesh])
        return pts[:count]

    rng = _rng(seed, 0)
    pts = _draw(kind, dim, count, rng)
    for _ in range(_REDRAW_LIMIT):
        _, first = np.unique(pts, axis=0, return_index=True)
        if first.size == count:
            return pts
        dup = np.setdiff1d(np.arange(count), first)
        pts[dup] = _draw(kind, dim, dup.size, rng)
    raise RuntimeError(f"could not draw {count} distinct points in {_REDRAW_LIMIT} retries")


def diameter(X) -> float:
    """Largest pairwise distance of a point set; 0 for a singleton."""
    P = as_point_set(X)
    if P.shape[0] == 0:
        raise ValueError("diameter of an empty set is undefined")
    if P.shape[0] == 1:
        return 0.0
    return float(np.max(distance_matrix(P)))


def subset_diameter(D, indices) -> float:
    """Diameter of an index subset under a precomputed distance matrix."""
    M = np.asarray(D, dtype=float)
    idx = np.asarray(indices, dtype=int)
    if idx.size == 0:
        raise ValueError("diameter of an empty subset is undefined")
    return float(np.max(M[np.ix_(idx, idx)]))
