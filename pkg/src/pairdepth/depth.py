"""Pair-depth counting, Tukey depth, and centerpoints with certification.

The pair depth of a query point z is the exact number of ordered pairs whose
hull S(a, b) contains z.  Tukey depth is computed exactly in dimensions 1
and 2 (closed halfspaces throughout); in higher dimension the reported value
is the minimum over a large audited direction set and is tagged as such,
never passed off as exact.  Centerpoints come from an iterated-Radon
heuristic and are only called certified when the depth check reaches the
ceil(N / (n+1)) target.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .geometry import TOL, as_point, as_point_set, _rng
from .shapes import BALL, PairShape, cover_matrix

METHOD_EXACT_1D = "exact-1d"
METHOD_EXACT_2D = "exact-2d"
METHOD_DIRECTIONAL = "directional-lower-bound"

_COMBINATION_NORMAL_CAP = 5000
_RANDOM_DIRECTIONS = 10_000


@dataclass
class TukeyDepth:
    """Closed-halfspace depth value plus how it was obtained."""

    depth: int
    method: str
    directions_checked: int = 0

    def __int__(self):
        return self.depth


@dataclass
class CenterpointCertificate:
    """A candidate deep point and the audit of its depth claim.

    ``certified`` means ``claimed_depth >= target`` where the target is
    ceil(N / (n+1)).  For methods ``exact-1d`` and ``exact-2d`` the claim is
    the true Tukey depth; for ``directional-lower-bound`` it is the minimum
    count over the audited direction set only.
    """

    point: np.ndarray
    claimed_depth: int
    target: int
    method: str
    directions_checked: int
    certified: bool


@dataclass
class DepthReport:
    """A witness point, its exact ordered-pair coverage, and the bound it met.

    ``ordered_pair_count`` counts ordered pairs (a, b), a != b when both are
    drawn from the same set.  ``unordered_pair_count`` (when present) counts
    unordered pairs {a, b}; symmetric shapes make it exactly half the ordered
    count over a single set.
    """

    witness: np.ndarray
    ordered_pair_count: int
    pair_universe: int
    fraction: float
    bound: float
    bound_met: bool
    bound_name: str = ""
    certified: bool = True
    certificate: CenterpointCertificate | None = None
    unordered_pair_count: int | None = None


def pair_depth(z, shape: PairShape, A, B=None) -> int:
    """Exact number of ordered pairs whose hull contains z.

    With ``B=None`` the pairs are ordered distinct pairs of ``A`` (the a = b
    diagonal is excluded); otherwise all of A x B counts.
    """
    pz = as_point(z)
    PA = as_point_set(A, dim=pz.shape[0])
    if B is None:
        M = cover_matrix(shape, pz, PA, PA)
        return int(M.sum()) - int(np.trace(M))
    PB = as_point_set(B, dim=pz.shape[0])
    return int(cover_matrix(shape, pz, PA, PB).sum())


# ---------------------------------------------------------------------------
# Tukey depth
# ---------------------------------------------------------------------------


def _depth_1d(z: float, xs: np.ndarray) -> int:
    return int(min(np.count_nonzero(xs <= z), np.count_nonzero(xs >= z)))


def _halfplane_counts(V: np.ndarray, directions: np.ndarray) -> np.ndarray:
    # V: centered points (m, n); directions: (D, n); closed counts per direction.
    return np.count_nonzero(V @ directions.T >= 0.0, axis=0)


def _depth_2d_exact(pz: np.ndarray, X: np.ndarray) -> tuple[int, int]:
    V = X - pz[None, :]
    coincident = np.all(V == 0.0, axis=1)
    base = int(np.count_nonzero(coincident))
    V = V[~coincident]
    if V.shape[0] == 0:
        return base, 1
    ang = np.arctan2(V[:, 1], V[:, 0])
    # Halfplane boundaries through z touch a data point at these normals.
    crit = np.sort(np.unique(np.mod(np.concatenate([ang + np.pi / 2, ang - np.pi / 2]), 2 * np.pi)))
    mids = (crit + np.diff(np.append(crit, crit[0] + 2 * np.pi)) / 2.0)
    thetas = np.concatenate([crit, mids])
    dirs = np.column_stack([np.cos(thetas), np.sin(thetas)])
    counts = _halfplane_counts(V, dirs)
    # The count is constant on the open arcs between critical normals and is
    # never smaller at a critical normal than beside it, so the arc midpoints
    # cover every attainable value.
    return base + int(counts.min()), int(dirs.shape[0])


def _null_space_normal(rows: np.ndarray) -> np.ndarray | None:
    # A unit normal orthogonal to all given row vectors (n-1 rows in R^n).
    _, s, vt = np.linalg.svd(rows)
    normal = vt[-1]
    norm = np.linalg.norm(normal)
    if norm == 0.0:
        return None
    return normal / norm


def tukey_depth(z, X, random_directions: int = _RANDOM_DIRECTIONS, seed: int = 0) -> TukeyDepth:
    """Closed-halfspace depth of z in X: exact for n <= 2, audited for n >= 3.

    For n >= 3 the value is the minimum count over a direction set built
    from every z-to-point vector, every normal of a hyperplane through z and
    n-1 data points (while the number of combinations stays below a cap),
    and ``random_directions`` seeded unit vectors, all with both signs.
    Enlarging the set can only lower the reported value toward the true
    depth, which is what the method tag records.
    """
    pz = as_point(z)
    P = as_point_set(X, dim=pz.shape[0])
    n = P.shape[1]
    if n == 1:
        return TukeyDepth(_depth_1d(float(pz[0]), P[:, 0]), METHOD_EXACT_1D, 1)
    if n == 2:
        depth, checked = _depth_2d_exact(pz, P)
        return TukeyDepth(depth, METHOD_EXACT_2D, checked)

    V = P - pz[None, :]
    nonzero = V[np.any(V != 0.0, axis=1)]
    dirs = [nonzero / np.linalg.norm(nonzero, axis=1, keepdims=True)] if nonzero.size else []

    m = nonzero.shape[0]
    combos = itertools.combinations(range(m), n - 1)
    budget = _COMBINATION_NORMAL_CAP
    normals = []
    for idx in combos:
        if budget <= 0:
            break
        budget -= 1
        normal = _null_space_normal(nonzero[list(idx)])
        if normal is not None:
            normals.append(normal)
    if normals:
        dirs.append(np.array(normals))

    rng = _rng(seed, 2)
    g = rng.standard_normal((random_directions, n))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    dirs.append(g / norms)

    D = np.vstack(dirs)
    D = np.vstack([D, -D])
    counts = _halfplane_counts(V, D)
    return TukeyDepth(int(counts.min()), METHOD_DIRECTIONAL, int(D.shape[0]))


# ---------------------------------------------------------------------------
# Radon points and centerpoints
# ---------------------------------------------------------------------------


def radon_point(P) -> np.ndarray:
    """A point in both convex hulls of a Radon partition of the input.

    Any n + 2 points in R^n are affinely dependent; the dependence is read
    off the null space of the stacked system (coordinates plus an all-ones
    row) and the returned point is the convex combination of its positive
    class.  More than n + 2 points are accepted; rank-deficient inputs
    resolve to whichever null-space vector the decomposition yields.
    """
    pts = as_point_set(P)
    count, n = pts.shape
    if count < n + 2:
        raise ValueError(f"need at least n + 2 = {n + 2} points, got {count}")
    system = np.vstack([pts.T, np.ones(count)])
    _, _, vt = np.linalg.svd(system)
    lam = vt[-1]
    if np.max(np.abs(lam)) < 1e-12:
        raise ArithmeticError("null-space extraction failed")
    pos = lam > 0.0
    weight = float(lam[pos].sum())
    if not np.any(pos) or not np.any(lam < 0.0) or weight <= 1e-300:
        raise ArithmeticError("degenerate affine dependence: no sign split")
    return (lam[pos] @ pts[pos]) / weight


def _median_point(X: np.ndarray) -> np.ndarray:
    return np.median(X, axis=0)


def _radon_collapse(X: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One tournament: collapse a working multiset to a single Radon point."""
    n = X.shape[1]
    work = list(X[rng.permutation(X.shape[0])])
    while len(work) >= n + 2:
        idx = rng.choice(len(work), size=n + 2, replace=False)
        chosen = np.array([work[i] for i in idx])
        try:
            merged = radon_point(chosen)
        except ArithmeticError:
            merged = chosen.mean(axis=0)
        for i in sorted(idx, reverse=True):
            del work[i]
        work.append(merged)
    return work[rng.integers(len(work))] if len(work) > 1 else work[0]


def centerpoint(X, effort: int = 16, seed: int = 0) -> CenterpointCertificate:
    """Search for a point of Tukey depth at least ceil(N / (n+1)) in X.

    Runs up to ``effort`` rounds; each round collapses a shuffled working
    multiset by repeatedly replacing random (n+2)-subsets with their Radon
    point, then audits the surviving candidate with ``tukey_depth``.  The
    coordinatewise median is audited first since it often already certifies.
    The best candidate seen is returned; ``certified`` is never set without
    the depth check passing, and for n >= 3 the method tag records that the
    check itself is directional.
    """
    P = as_point_set(X)
    N, n = P.shape
    if N == 0:
        raise ValueError("centerpoint of an empty set is undefined")
    target = -(-N // (n + 1))  # ceil

    def audit(point: np.ndarray) -> CenterpointCertificate:
        td = tukey_depth(point, P, seed=seed)
        return CenterpointCertificate(
            point, td.depth, target, td.method, td.directions_checked, td.depth >= target
        )

    if n == 1:
        return audit(_median_point(P))

    best: CenterpointCertificate | None = None
    if N < n + 2:
        candidates = list(P)  # too few points for a Radon partition
    else:
        candidates = [_median_point(P), P.mean(axis=0)]
    rounds = 0
    while True:
        for cand in candidates:
            cert = audit(cand)
            if best is None or cert.claimed_depth > best.claimed_depth:
                best = cert
            if best.certified:
                return best
        if rounds >= effort or N < n + 2:
            return best
        rounds += 1
        candidates = [_radon_collapse(P, _rng(seed, 3, rounds))]


def colorful_ball_depth(
    A, B, effort: int = 16, seed: int = 0, max_retries: int = 4
) -> DepthReport:
    """Exact ball-coverage count at a certified centerpoint of A.

    Counts ordered pairs (a, b) in A x B whose diameter ball contains the
    centerpoint z of A, against the guarantee N*M / (n+1).  When z is
    certified the bound holds by construction: for each b, the closed
    halfspace at z facing away from b holds at least N/(n+1) points of A,
    and each such a makes the angle at z non-acute.  Certification failures
    retry with doubled effort before an uncertified report is returned.
    """
    PA = as_point_set(A)
    PB = as_point_set(B, dim=PA.shape[1])
    N, n = PA.shape
    M = PB.shape[0]

    cert = centerpoint(PA, effort=effort, seed=seed)
    attempt = 0
    while not cert.certified and attempt < max_retries:
        attempt += 1
        cert = centerpoint(PA, effort=effort * 2**attempt, seed=seed + 1_000 + attempt)

    count = pair_depth(cert.point, BALL, PA, PB)
    universe = N * M
    bound = universe / (n + 1)
    return DepthReport(
        witness=cert.point,
        ordered_pair_count=count,
        pair_universe=universe,
        fraction=count / universe if universe else 0.0,
        bound=bound,
        bound_met=count >= bound - TOL,
        bound_name="N*M/(n+1)",
        certified=cert.certified,
        certificate=cert,
    )
