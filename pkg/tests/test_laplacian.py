from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_garland.complex import ComplexError, build_complex, full_simplex, simplex_boundary
from simplicial_garland.generators import random_pure
from simplicial_garland.laplacian import (
    WeightFunction,
    boundary_matrix,
    constant_weight,
    degree_matrix_R,
    laplacian,
    laplacian_by_formula,
    link_weight,
    max_up_degree,
    min_up_degree,
    pure_cofacet_weight,
)


def test_constant_weight(sphere):
    w = constant_weight(sphere)
    assert all(w[f] == 1 for f in sphere)
    single = build_complex([(0,)])
    assert dict(constant_weight(single)) == {(): 1, (0,): 1}


def test_cofacet_weights_on_sphere(sphere):
    w = pure_cofacet_weight(sphere, 2)
    assert w[(0, 1)] == 2 and w[(0,)] == 3 and w[()] == 4 and w[(0, 1, 2)] == 1


def test_cofacet_weights_single_simplex():
    X = full_simplex(4)
    w = pure_cofacet_weight(X, 3)
    assert all(w[f] == 1 for f in X)


def test_cofacet_weights_two_triangles(two_triangles):
    w = pure_cofacet_weight(two_triangles, 2)
    assert w[(0, 1)] == 2 and w[(2,)] == 1


def test_cofacet_weights_need_purity():
    with pytest.raises(ComplexError):
        pure_cofacet_weight(build_complex([(0, 1, 2), (3, 4)]), 2)


def test_weights_must_be_positive(sphere):
    with pytest.raises(ValueError):
        WeightFunction(sphere, {f: (0 if f == () else 1) for f in sphere})
    with pytest.raises(ComplexError):
        WeightFunction(sphere, {(): 1})


def test_link_weight(sphere):
    w = pure_cofacet_weight(sphere, 2)
    we = link_weight(w, (0, 1))
    assert we[(2,)] == 1 and we[()] == 2
    assert all(v == 1 for v in link_weight(constant_weight(sphere), (0,)).values())


@pytest.mark.parametrize("seed", range(8))
def test_link_weight_is_cofacet_weight_of_link(seed):
    X = random_pure(7, 2, 0.5, seed=seed)
    w = pure_cofacet_weight(X, 2)
    for l in (0, 1):
        for eta in X.faces(l):
            lk = X.link(eta)
            assert dict(link_weight(w, eta)) == dict(pure_cofacet_weight(lk, 2 - l - 1))


def test_boundary_hollow_triangle(hollow_triangle):
    B = boundary_matrix(hollow_triangle, 1)
    # column {0,1}: +1 at {1}, -1 at {0}
    assert B[0, 0] == -1 and B[1, 0] == 1 and B[2, 0] == 0


def test_boundary_k0_is_row_of_ones(sphere):
    B = boundary_matrix(sphere, 0)
    assert B.shape == (1, 4) and np.all(B == 1)


def test_boundary_sphere_top(sphere):
    B = boundary_matrix(sphere, 2)
    assert B.shape == (6, 4)
    assert np.all(np.abs(B).sum(axis=0) == 3)


def test_boundary_k_out_of_range(sphere):
    with pytest.raises(ComplexError):
        boundary_matrix(sphere, 3)


@pytest.mark.parametrize("X", [simplex_boundary(5), full_simplex(5), random_pure(8, 3, 0.5, seed=1)],
                         ids=["sphere3", "simplex5", "random"])
def test_boundary_squares_to_zero(X):
    for k in range(X.dim):
        B = boundary_matrix(X, k)
        C = boundary_matrix(X, k + 1)
        assert not np.any(B @ C)
        assert np.all(np.count_nonzero(C, axis=0) == k + 2)


def test_k4_total_laplacian(k4):
    w = constant_weight(k4)
    up = laplacian(k4, w, 0, "up").to_float()
    down = laplacian(k4, w, 0, "down").to_float()
    J = np.ones((4, 4))
    assert np.array_equal(up, 4 * np.eye(4) - J)
    assert np.array_equal(down, J)
    assert np.array_equal(laplacian(k4, w, 0).to_float(), 4 * np.eye(4))


def test_upper_is_zero_at_top(sphere):
    w = pure_cofacet_weight(sphere)
    assert not np.any(laplacian(sphere, w, 2, "up").to_float())
    assert not np.any(laplacian_by_formula(sphere, w, 2, "up").to_float())
    assert np.array_equal(laplacian(sphere, w, 2).to_float(), laplacian(sphere, w, 2, "down").to_float())


def test_exact_requires_operator(sphere):
    with pytest.raises(ValueError):
        laplacian(sphere, constant_weight(sphere), 1, symmetry="symmetrized", exact=True)


def test_rejects_bad_k(sphere):
    with pytest.raises(ComplexError):
        laplacian(sphere, constant_weight(sphere), 3)


def test_formula_lower_hollow_triangle(hollow_triangle):
    w = constant_weight(hollow_triangle)
    L = laplacian_by_formula(hollow_triangle, w, 1, "down").to_float()
    ref = laplacian(hollow_triangle, w, 1, "down").to_float()
    assert np.all(np.diag(L) == 2)
    assert np.array_equal(np.abs(L - np.diag(np.diag(L))), np.ones((3, 3)) - np.eye(3))
    assert np.array_equal(L, ref)


def test_formula_upper_diagonal_on_sphere(sphere):
    w = pure_cofacet_weight(sphere, 2)
    L = laplacian_by_formula(sphere, w, 1, "up", symmetry="operator", exact=True)
    assert all(L.entries[i, i] == 1 for i in range(6))


def _random_rational_weight(X, seed):
    rng = np.random.default_rng(seed)
    return WeightFunction(X, {f: Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 5))) for f in X})


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("flavor", ["up", "down", "total"])
def test_formula_matches_boundary_products(seed, flavor):
    X = random_pure(7, 2 + seed % 2, 0.5, seed=seed)
    w = _random_rational_weight(X, seed)
    for k in range(X.dim + 1):
        a = laplacian(X, w, k, flavor).to_float()
        b = laplacian_by_formula(X, w, k, flavor).to_float()
        assert np.max(np.abs(a - b)) <= 1e-12 * (1 + np.max(np.abs(a)))
        ea = laplacian(X, w, k, flavor, "operator", exact=True).entries
        eb = laplacian_by_formula(X, w, k, flavor, "operator", exact=True).entries
        assert (ea == eb).all()


@pytest.mark.parametrize("seed", range(6))
def test_symmetrized_versions_are_similar_and_psd(seed):
    X = random_pure(7, 2, 0.6, seed=seed)
    w = _random_rational_weight(X, seed + 10)
    for k in range(X.dim + 1):
        for flavor in ("up", "down", "total"):
            S = laplacian(X, w, k, flavor).to_float()
            O = laplacian(X, w, k, flavor, "operator").to_float()
            scale = max(1.0, np.max(np.abs(S)))
            assert np.max(np.abs(S - S.T)) <= 1e-12 * scale
            es = np.linalg.eigvalsh(S)
            eo = np.sort(np.linalg.eigvals(O).real)
            assert np.max(np.abs(es - eo)) <= 1e-9 * scale
            assert es.min() >= -1e-9 * scale


def test_total_is_up_plus_down_exactly(two_triangles):
    w = _random_rational_weight(two_triangles, 3)
    for k in range(3):
        t = laplacian(two_triangles, w, k, "total", "operator", exact=True).entries
        u = laplacian(two_triangles, w, k, "up", "operator", exact=True).entries
        d = laplacian(two_triangles, w, k, "down", "operator", exact=True).entries
        assert (t == u + d).all()


def test_degree_matrix_examples(sphere, hollow_triangle, k4):
    R = degree_matrix_R(sphere, pure_cofacet_weight(sphere), 1, exact=True).entries
    assert (R == np.eye(6, dtype=int)).all()
    assert not np.any(degree_matrix_R(hollow_triangle, constant_weight(hollow_triangle), 1).to_float())
    assert np.array_equal(degree_matrix_R(k4, constant_weight(k4), 0).to_float(), 3 * np.eye(4))


def test_degree_extremes(sphere, two_triangles):
    assert max_up_degree(sphere, constant_weight(sphere), 1) == 2
    w = constant_weight(two_triangles)
    assert max_up_degree(two_triangles, w, 1) == 2
    assert min_up_degree(two_triangles, w, 1) == 1
    with pytest.raises(ComplexError):
        max_up_degree(sphere, constant_weight(sphere), 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 8), st.integers(1, 3), st.integers(0, 10_000))
def test_pure_degrees_are_d_minus_k(n, d, seed):
    X = random_pure(n, d, 0.5, seed=seed)
    w = pure_cofacet_weight(X, d)
    for k in range(d + 1):
        assert max_up_degree(X, w, k) == min_up_degree(X, w, k) == Fraction(d - k)
