import numpy as np
import pytest

from pairdepth import (
    as_point_set,
    diameter,
    distance_matrix,
    euclidean_distance,
    generate_points,
    subset_diameter,
    validate_distance_matrix,
)

from oracles import diameter_oracle, distance_oracle


def test_distance_345():
    assert euclidean_distance([0.0, 0.0], [3.0, 4.0]) == 5.0


def test_distance_identity():
    p = [1.3, -2.7, 0.4]
    assert euclidean_distance(p, p) == 0.0


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        euclidean_distance([0.0, 0.0], [1.0, 2.0, 3.0])


def test_distance_against_two_loop_reference():
    rng = np.random.default_rng(42)
    for _ in range(100):
        n = int(rng.integers(1, 6))
        a = rng.standard_normal(n)
        b = rng.standard_normal(n)
        assert abs(euclidean_distance(a, b) - distance_oracle(a, b)) <= 1e-12


def test_distance_symmetry_exact():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = rng.standard_normal(3)
        b = rng.standard_normal(3)
        assert euclidean_distance(a, b) == euclidean_distance(b, a)


def test_distance_matrix_singleton():
    D = distance_matrix([[2.0, 5.0]])
    assert D.shape == (1, 1) and D[0, 0] == 0.0


def test_distance_matrix_unit_square():
    D = distance_matrix([[0, 0], [1, 0], [0, 1], [1, 1]])
    off = D[~np.eye(4, dtype=bool)]
    assert np.all(np.isin(np.round(off, 12), np.round([1.0, np.sqrt(2)], 12)))


def test_distance_matrix_symmetric_zero_diag():
    X = generate_points("gaussian", 3, 20, seed=1)
    D = distance_matrix(X)
    assert np.array_equal(D, D.T)
    assert np.all(np.diag(D) == 0.0)
    assert np.all(D >= 0.0)


def test_validate_distance_matrix_warns_on_triangle_violation():
    M = np.array([[0.0, 1.0, 5.0], [1.0, 0.0, 1.0], [5.0, 1.0, 0.0]])
    with pytest.warns(UserWarning):
        validate_distance_matrix(M)


def test_validate_distance_matrix_rejects_asymmetry():
    M = np.array([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError):
        validate_distance_matrix(M)


def test_generate_deterministic():
    a = generate_points("uniform-cube", 2, 5, seed=7)
    b = generate_points("uniform-cube", 2, 5, seed=7)
    assert np.array_equal(a, b)


def test_generate_all_kinds_distinct_rows():
    for kind in ("uniform-cube", "gaussian", "grid"):
        X = generate_points(kind, 3, 50, seed=3)
        assert np.unique(X, axis=0).shape[0] == 50
    C = generate_points("circle", 2, 50, seed=3)
    assert np.unique(C, axis=0).shape[0] == 50


def test_generate_uniform_cube_range():
    X = generate_points("uniform-cube", 4, 200, seed=11)
    assert np.all((X >= 0.0) & (X <= 1.0))


def test_generate_gaussian_mean():
    X = generate_points("gaussian", 2, 10_000, seed=5)
    assert np.all(np.abs(X.mean(axis=0)) < 0.05)


def test_generate_circle_on_unit_circle():
    C = generate_points("circle", 2, 100, seed=2)
    assert np.allclose(np.linalg.norm(C, axis=1), 1.0)


def test_generate_circle_wrong_dim():
    with pytest.raises(ValueError):
        generate_points("circle", 3, 5, seed=0)


def test_generate_zero_count():
    X = generate_points("gaussian", 2, 0, seed=0)
    assert X.shape == (0, 2)


def test_diameter_singleton_and_square():
    assert diameter([[3.0, 3.0]]) == 0.0
    assert abs(diameter([[0, 0], [1, 0], [0, 1], [1, 1]]) - np.sqrt(2)) < 1e-15


def test_diameter_empty_errors():
    with pytest.raises(ValueError):
        diameter(np.empty((0, 2)))
    with pytest.raises(ValueError):
        subset_diameter(np.zeros((3, 3)), [])


def test_diameter_against_brute_force():
    X = generate_points("gaussian", 3, 30, seed=9)
    assert abs(diameter(X) - diameter_oracle(X)) <= 1e-12


def test_diameter_monotone_on_nested_subsets():
    rng = np.random.default_rng(13)
    X = generate_points("gaussian", 2, 40, seed=13)
    D = distance_matrix(X)
    idx = rng.permutation(40)
    prev = 0.0
    for size in (5, 10, 20, 40):
        d = subset_diameter(D, idx[:size])
        assert d >= prev
        prev = d


def test_as_point_set_rejects_nan():
    with pytest.raises(ValueError):
        as_point_set([[0.0, np.nan]])
