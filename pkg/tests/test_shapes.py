import numpy as np
import pytest

from pairdepth import (
    BALL,
    BOX,
    SEGMENT,
    PairShape,
    ellipsoid,
    estimate_t,
    format_shape,
    lens,
    member,
    member_points,
    parse_shape,
)

ALL_SHAPES = [BALL, lens(2.0), ellipsoid(0.5), BOX, SEGMENT]


def random_pairs(rng, n, count):
    for _ in range(count):
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        if not np.array_equal(x, y):
            yield x, y


# ---------------------------------------------------------------------------
# Point membership
# ---------------------------------------------------------------------------


def test_ball_midpoint_and_near_miss():
    x, y = np.array([0.0, 0.0]), np.array([1.0, 0.0])
    assert member(BALL, [0.5, 0.0], x, y)
    assert not member(BALL, [0.5, 0.51], x, y)


def test_box_between():
    assert member(BOX, [0.3, 0.9], [0.0, 0.0], [1.0, 1.0])
    assert not member(BOX, [0.3, 1.1], [0.0, 0.0], [1.0, 1.0])


def test_ellipsoid_contains_segment():
    rng = np.random.default_rng(0)
    for a in (1e-6, 0.01, 0.5, 4.0):
        for x, y in random_pairs(rng, 3, 20):
            t = rng.random()
            z = x + t * (y - x)
            assert member(ellipsoid(a), z, x, y)


def test_lens_endpoints_are_members():
    x, y = np.array([0.0, 0.0]), np.array([1.0, 0.0])
    for a in (0.5, np.pi / 2, 3.0):
        assert member(lens(a), x, x, y)
        assert member(lens(a), y, x, y)


def test_endpoint_containment_all_kinds():
    rng = np.random.default_rng(3)
    for shape in ALL_SHAPES:
        for x, y in random_pairs(rng, 2, 10):
            assert member(shape, x, x, y)
            assert member(shape, y, x, y)


def test_degenerate_pair_is_single_point():
    x = np.array([0.25, -1.5])
    for shape in ALL_SHAPES:
        assert member(shape, x, x, x)
        assert not member(shape, x + 1e-6, x, x)


def test_lens_right_angle_equals_ball():
    rng = np.random.default_rng(17)
    right = lens(np.pi / 2)
    for x, y in random_pairs(rng, 3, 100):
        Z = rng.standard_normal((100, 3))
        got_ball = member_points(BALL, Z, x, y)
        got_lens = member_points(right, Z, x, y)
        assert np.array_equal(got_ball, got_lens)


def test_segment_membership_tolerances():
    x, y = np.array([0.0, 0.0]), np.array([1.0, 0.0])
    assert member(SEGMENT, [0.25, 0.0], x, y)
    assert not member(SEGMENT, [0.25, 1e-6], x, y)
    assert not member(SEGMENT, [1.5, 0.0], x, y)


def test_member_dimension_mismatch():
    with pytest.raises(ValueError):
        member(BALL, [0.0, 0.0, 0.0], [0.0, 0.0], [1.0, 0.0])


# ---------------------------------------------------------------------------
# Invariants: symmetry, equivariance, nesting
# ---------------------------------------------------------------------------


def test_symmetry_hundred_thousand_triples():
    # 100 pairs x 200 queries x 5 kinds = 1e5 evaluated triples.
    rng = np.random.default_rng(23)
    for shape in ALL_SHAPES:
        for x, y in random_pairs(rng, 3, 100):
            Z = rng.standard_normal((200, 3)) * 1.5
            assert np.array_equal(
                member_points(shape, Z, x, y), member_points(shape, Z, y, x)
            )


def test_similarity_equivariance():
    rng = np.random.default_rng(29)
    for shape in (BALL, lens(1.2), ellipsoid(0.3), SEGMENT):
        for x, y in random_pairs(rng, 2, 25):
            Z = np.vstack(
                [
                    rng.standard_normal((40, 2)),
                    x + rng.random((10, 1)) * (y - x),  # points of the segment
                ]
            )
            sigma = float(rng.random() * 3.0 + 0.1)
            shift = rng.standard_normal(2)
            base = member_points(shape, Z, x, y)
            moved = member_points(shape, sigma * Z + shift, sigma * x + shift, sigma * y + shift)
            # Allow disagreement only within the predicate slack of the boundary.
            disagree = base != moved
            assert not np.any(disagree[:40]) or _near_boundary(shape, Z[:40][disagree[:40]], x, y)
            assert np.all(moved[40:])  # segment points stay inside under similarity


def _near_boundary(shape, Z, x, y, slack=1e-7):
    # A generic point disagreeing under equivariance must sit within float
    # slack of the defining inequality's boundary.
    if shape.kind == "ball":
        vals = np.einsum("kn,kn->k", x[None] - Z, y[None] - Z)
        return np.all(np.abs(vals) <= slack)
    return False


def test_box_equivariance_axis_parallel():
    rng = np.random.default_rng(31)
    for x, y in random_pairs(rng, 3, 25):
        Z = rng.standard_normal((50, 3))
        scale = rng.random(3) * 2.0 + 0.1  # positive diagonal
        shift = rng.standard_normal(3)
        assert np.array_equal(
            member_points(BOX, Z, x, y),
            member_points(BOX, Z * scale + shift, x * scale + shift, y * scale + shift),
        )


def test_nesting_ellipsoid_grows_lens_shrinks():
    rng = np.random.default_rng(37)
    for x, y in random_pairs(rng, 2, 30):
        Z = rng.standard_normal((80, 2)) * 2.0
        small_e = member_points(ellipsoid(0.2), Z, x, y)
        big_e = member_points(ellipsoid(0.9), Z, x, y)
        assert np.all(big_e[small_e])  # Ellipsoid(0.2) subset of Ellipsoid(0.9)
        wide_lens = member_points(lens(0.8), Z, x, y)
        narrow_lens = member_points(lens(2.4), Z, x, y)
        assert np.all(wide_lens[narrow_lens])  # Lens(2.4) subset of Lens(0.8)


def test_segment_contained_in_every_kind():
    rng = np.random.default_rng(41)
    for shape in ALL_SHAPES:
        for x, y in random_pairs(rng, 3, 20):
            Z = x + rng.random((20, 1)) * (y - x)
            on_seg = member_points(SEGMENT, Z, x, y)
            inside = member_points(shape, Z, x, y)
            assert np.all(inside[on_seg])


# ---------------------------------------------------------------------------
# Shape specs
# ---------------------------------------------------------------------------


def test_parse_and_format_round_trip():
    for spec in ("ball", "box", "segment", "lens:2.094", "ellipsoid:0.5"):
        assert format_shape(parse_shape(spec)) == spec


def test_parse_rejects_bad_specs():
    for bad in ("sphere", "lens", "lens:x", "ball:1", "ellipsoid:-1", "lens:3.5"):
        with pytest.raises(ValueError):
            parse_shape(bad)


def test_lens_accepts_zero_angle():
    z = PairShape("lens", 0.0)
    assert member(z, [5.0, 5.0], [0.0, 0.0], [1.0, 0.0])


# ---------------------------------------------------------------------------
# Thickness estimation
# ---------------------------------------------------------------------------


def test_estimate_t_ball_1d_is_half():
    est = estimate_t(BALL, 1, samples=20_000, seed=0)
    assert 0.47 <= est.t_hat <= 0.53
    # In 1-D the intersected fraction is exactly 1/2 at every radius.
    assert np.all(np.abs(est.fractions - 0.5) < 0.02)


def test_estimate_t_ball_2d_quarter():
    est = estimate_t(BALL, 2, samples=50_000, seed=1)
    assert abs(est.t_hat - 0.25) <= 3 * est.ci_halfwidth + 0.005


def test_estimate_t_lens_right_angle_matches_ball():
    ball = estimate_t(BALL, 2, samples=20_000, seed=2)
    right = estimate_t(lens(np.pi / 2), 2, samples=20_000, seed=2)
    assert abs(ball.t_hat - right.t_hat) <= 3 * ball.ci_halfwidth


def test_estimate_t_lens_monotone_shrinkage():
    wide = estimate_t(lens(1.8), 2, samples=20_000, seed=3)
    narrow = estimate_t(lens(2.4), 2, samples=20_000, seed=3)
    assert narrow.t_hat <= wide.t_hat + 3 * wide.ci_halfwidth


def test_estimate_t_threaded_matches_sequential():
    seq = estimate_t(BALL, 2, samples=5_000, seed=4, threads=1)
    par = estimate_t(BALL, 2, samples=5_000, seed=4, threads=4)
    assert np.array_equal(seq.fractions, par.fractions)
    assert seq.t_hat == par.t_hat


def test_estimate_t_rejects_flat_shapes():
    with pytest.raises(ValueError):
        estimate_t(BOX, 2)
    with pytest.raises(ValueError):
        estimate_t(SEGMENT, 2)
