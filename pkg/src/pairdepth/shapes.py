"""Two-point hull families and Monte-Carlo estimation of their thickness t.

A pair shape S(x, y) assigns to every pair of points a closed, symmetric
region of R^n.  Five families are implemented:

* ``ball``          the Euclidean ball with diameter segment [x, y];
* ``lens:<a>``      points that see x and y at angle >= a (0 <= a < pi);
* ``ellipsoid:<a>`` points z with |z-x| + |z-y| <= (1+a)|x-y|, a > 0;
* ``box``           the minimal axis-parallel box containing x and y;
* ``segment``       the segment [x, y] itself (zero volume, negative control).

The first three are "thick": every ball B_r(y) with r <= |x-y| meets S(x, y)
in at least a t-fraction of its volume, for some t = t(family, n) > 0.
``estimate_t`` measures that fraction by sampling and reports the minimum
over a geometric radius grid.  Boxes can be arbitrarily flat and segments
have measure zero, so neither admits a positive t.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geometry import TOL, as_point, as_point_set, _rng

KINDS = ("ball", "lens", "ellipsoid", "box", "segment")
T_SHAPE_KINDS = ("ball", "lens", "ellipsoid")


@dataclass(frozen=True)
class PairShape:
    """A tagged hull family; ``param`` is the lens angle or ellipsoid slack."""

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if self.kind == "lens":
            if self.param is None or not (0.0 <= self.param < np.pi):
                raise ValueError("lens angle must lie in [0, pi)")
        elif self.kind == "ellipsoid":
            if self.param is None or self.param <= 0.0:
                raise ValueError("ellipsoid slack must be positive")
        elif self.param is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    def __str__(self):
        return format_shape(self)


BALL = PairShape("ball")
BOX = PairShape("box")
SEGMENT = PairShape("segment")


def lens(angle: float) -> PairShape:
    return PairShape("lens", float(angle))


def ellipsoid(slack: float) -> PairShape:
    return PairShape("ellipsoid", float(slack))


def parse_shape(spec: str) -> PairShape:
    """Parse a shape spec string: ``ball``, ``lens:<a>``, ``ellipsoid:<a>``, ``box``, ``segment``."""
    name, sep, arg = spec.strip().partition(":")
    if name in ("ball", "box", "segment"):
        if sep:
            raise ValueError(f"{name} takes no parameter, got {spec!r}")
        return PairShape(name)
    if name in ("lens", "ellipsoid"):
        if not sep or not arg:
            raise ValueError(f"{name} needs a parameter, e.g. {name}:0.5")
        try:
            value = float(arg)
        except ValueError:
            raise ValueError(f"bad {name} parameter {arg!r}") from None
        return PairShape(name, value)
    raise ValueError(f"unknown shape spec {spec!r}")


def format_shape(shape: PairShape) -> str:
    if shape.param is None:
        return shape.kind
    return f"{shape.kind}:{shape.param:g}"


def is_t_shape(shape: PairShape) -> bool:
    return shape.kind in T_SHAPE_KINDS


# ---------------------------------------------------------------------------
# Membership predicates
# ---------------------------------------------------------------------------
#
# All predicates are closed.  Degenerate pairs x = y denote the one-point
# set {x} in every family.  The lens additionally declares its endpoints
# members (they are limits of interior points, but the angle at them is
# undefined).  Segment membership uses a collinearity tolerance proportional
# to |x - y| so that the predicate is exactly similarity-equivariant.


def member_points(shape: PairShape, Z, x, y) -> np.ndarray:
    """Vectorized membership of many query points in one shape S(x, y).

    Returns a boolean array with one entry per row of ``Z``.
    """
    px, py = as_point(x), as_point(y)
    if px.shape != py.shape:
        raise ValueError("x and y have different dimensions")
    Q = as_point_set(Z, dim=px.shape[0])

    if np.array_equal(px, py):
        return np.all(Q == px[None, :], axis=1)

    if shape.kind == "ball":
        return np.einsum("kn,kn->k", px[None, :] - Q, py[None, :] - Q) <= 0.0

    if shape.kind == "lens":
        u = px[None, :] - Q
        w = py[None, :] - Q
        nu = np.sqrt(np.einsum("kn,kn->k", u, u))
        nw = np.sqrt(np.einsum("kn,kn->k", w, w))
        at_endpoint = (nu == 0.0) | (nw == 0.0)
        denom = np.where(at_endpoint, 1.0, nu * nw)
        cos = np.einsum("kn,kn->k", u, w) / denom
        return at_endpoint | (cos <= np.cos(shape.param))

    if shape.kind == "ellipsoid":
        dx = np.sqrt(np.sum((Q - px[None, :]) ** 2, axis=1))
        dy = np.sqrt(np.sum((Q - py[None, :]) ** 2, axis=1))
        gauge = float(np.sqrt(np.sum((px - py) ** 2)))
        return dx + dy <= (1.0 + shape.param) * gauge

    if shape.kind == "box":
        lo = np.minimum(px, py)
        hi = np.maximum(px, py)
        return np.all((Q >= lo[None, :]) & (Q <= hi[None, :]), axis=1)

    if shape.kind == "segment":
        v = py - px
        vv = float(v @ v)
        length = np.sqrt(vv)
        t = (Q - px[None, :]) @ v / vv
        perp2 = np.sum((Q - px[None, :]) ** 2, axis=1) - t * t * vv
        np.maximum(perp2, 0.0, out=perp2)
        on_line = perp2 <= (TOL * length) ** 2
        return on_line & (t >= -TOL) & (t <= 1.0 + TOL)

    raise ValueError(f"unknown shape kind {shape.kind!r}")


def member(shape: PairShape, z, x, y) -> bool:
    """Is z in S(x, y)?  Closed membership per the family's inequality."""
    return bool(member_points(shape, as_point(z)[None, :], x, y)[0])


def cover_matrix(shape: PairShape, z, A, B) -> np.ndarray:
    """Boolean (N, M) matrix: entry (i, j) says z lies in S(A[i], B[j]).

    This is the counting kernel behind pair depth and uncovered graphs; it
    evaluates one query point against every pair drawn from A x B.
    """
    pz = as_point(z)
    PA = as_point_set(A, dim=pz.shape[0])
    PB = as_point_set(B, dim=pz.shape[0])
    U = PA - pz[None, :]  # a - z, one row per a
    W = PB - pz[None, :]

    if shape.kind == "ball":
        return U @ W.T <= 0.0

    if shape.kind == "lens":
        nu = np.sqrt(np.einsum("in,in->i", U, U))
        nw = np.sqrt(np.einsum("jn,jn->j", W, W))
        at_endpoint = (nu[:, None] == 0.0) | (nw[None, :] == 0.0)
        denom = np.where(at_endpoint, 1.0, nu[:, None] * nw[None, :])
        cos = (U @ W.T) / denom
        out = at_endpoint | (cos <= np.cos(shape.param))
        return _fix_degenerate(out, PA, PB, pz)

    if shape.kind == "ellipsoid":
        da = np.sqrt(np.einsum("in,in->i", U, U))
        db = np.sqrt(np.einsum("jn,jn->j", W, W))
        gram = PA @ PB.T
        qa = np.einsum("in,in->i", PA, PA)
        qb = np.einsum("jn,jn->j", PB, PB)
        d2 = qa[:, None] + qb[None, :] - 2.0 * gram
        np.maximum(d2, 0.0, out=d2)
        dab = np.sqrt(d2)
        return da[:, None] + db[None, :] <= (1.0 + shape.param) * dab

    if shape.kind == "box":
        # z is in the box iff, per coordinate, a and z-reflected b straddle z.
        out = np.ones((PA.shape[0], PB.shape[0]), dtype=bool)
        for i in range(pz.shape[0]):
            out &= U[:, i][:, None] * W[:, i][None, :] <= 0.0
        return out

    if shape.kind == "segment":
        # Projection parameter and squared offset from the line through a, b.
        gram = PA @ PB.T
        qa = np.einsum("in,in->i", PA, PA)
        qb = np.einsum("jn,jn->j", PB, PB)
        vv = qa[:, None] + qb[None, :] - 2.0 * gram  # |b - a|^2
        np.maximum(vv, 0.0, out=vv)
        degenerate = vv == 0.0
        # (z - a) . (b - a) = (z . b) - (z . a) - (a . b) + |a|^2
        zb = PB @ pz
        za = PA @ pz
        dot = zb[None, :] - za[:, None] - gram + qa[:, None]
        safe_vv = np.where(degenerate, 1.0, vv)
        t = dot / safe_vv
        dz2 = np.einsum("in,in->i", U, U)  # |z - a|^2
        perp2 = dz2[:, None] - t * t * safe_vv
        np.maximum(perp2, 0.0, out=perp2)
        on_line = perp2 <= (TOL**2) * vv
        out = on_line & (t >= -TOL) & (t <= 1.0 + TOL)
        out[degenerate] = False
        return _fix_degenerate(out, PA, PB, pz)

    raise ValueError(f"unknown shape kind {shape.kind!r}")


def _fix_degenerate(out: np.ndarray, PA, PB, pz) -> np.ndarray:
    """Repair entries with A[i] == B[j]: S(x, x) = {x} in every family."""
    eq = np.all(PA[:, None, :] == PB[None, :, :], axis=2)
    if np.any(eq):
        out = out.copy()
        z_hits = np.all(PA == pz[None, :], axis=1)
        out[eq] = z_hits[:, None].repeat(PB.shape[0], axis=1)[eq]
    return out


# ---------------------------------------------------------------------------
# Thickness estimation
# ---------------------------------------------------------------------------

_DEFAULT_RADII = 32
_MIN_RADIUS = 1.0 / 32.0
_Z95 = 1.959963984540054  # two-sided 95% normal quantile


@dataclass
class TEstimate:
    """Estimated thickness of a similarity-equivariant shape family.

    ``t_hat`` is the smallest sampled fraction vol(S(x,y) & B_r(y)) / vol(B_r(y))
    over the radius grid, for the canonical pair x = e1, y = 0.
    ``ci_halfwidth`` is the 95% normal-approximation half-width at the
    minimizing radius.
    """

    shape: PairShape
    dim: int
    t_hat: float
    samples_per_radius: int
    radii: np.ndarray = field(repr=False)
    fractions: np.ndarray = field(repr=False)
    ci_halfwidth: float = 0.0


def _ball_fraction(shape, dim, radius, samples, rng) -> float:
    g = rng.standard_normal((samples, dim))
    norms = np.sqrt(np.einsum("kn,kn->k", g, g))
    norms[norms == 0.0] = 1.0
    mag = radius * rng.random(samples) ** (1.0 / dim)
    pts = g * (mag / norms)[:, None]
    x = np.zeros(dim)
    x[0] = 1.0
    inside = member_points(shape, pts, x, np.zeros(dim))
    return float(np.count_nonzero(inside)) / samples


def estimate_t(
    shape: PairShape,
    dim: int,
    samples: int = 100_000,
    radii: int = _DEFAULT_RADII,
    seed: int = 0,
    threads: int = 1,
) -> TEstimate:
    """Monte-Carlo estimate of the thickness t of a ball, lens, or ellipsoid.

    For each radius r on a geometric grid over (0, 1], draw ``samples``
    points uniformly in B_r(y) (Gaussian direction times r * U^(1/n)
    magnitude, no rejection) and record the fraction landing in S(x, y) for
    the canonical pair.  Per-radius generators are keyed by the radius index,
    so threaded and sequential evaluation produce identical numbers.
    """
    if shape.kind not in T_SHAPE_KINDS:
        raise ValueError(
            f"{shape.kind} is not a t-shape: boxes can be arbitrarily flat and "
            "segments have measure zero"
        )
    if dim < 1 or samples < 1 or radii < 1:
        raise ValueError("dim, samples, and radii must be positive")

    grid = np.geomspace(_MIN_RADIUS, 1.0, radii) if radii > 1 else np.array([1.0])

    def one(k: int) -> float:
        return _ball_fraction(shape, dim, float(grid[k]), samples, _rng(seed, 1, k))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fractions = np.array(list(pool.map(one, range(grid.size))))
    else:
        fractions = np.array([one(k) for k in range(grid.size)])

    k_min = int(np.argmin(fractions))
    t_hat = float(fractions[k_min])
    ci = _Z95 * np.sqrt(max(t_hat * (1.0 - t_hat), 1.0 / samples) / samples)
    return TEstimate(
        shape=shape,
        dim=dim,
        t_hat=t_hat,
        samples_per_radius=samples,
        radii=grid,
        fractions=fractions,
        ci_halfwidth=float(ci),
    )
