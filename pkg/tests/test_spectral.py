import itertools
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from simplicial_garland import spectral
from simplicial_garland.complex import build_complex, full_simplex, simplex_boundary
from simplicial_garland.generators import random_pure
from simplicial_garland.laplacian import boundary_matrix, constant_weight, laplacian, pure_cofacet_weight
from simplicial_garland.spectral import (
    ConvergenceError,
    Spectrum,
    count_at_most,
    eigenvalues_symmetric,
    exact_rank,
    homology_dimension,
    numeric_kernel_dim,
    spectrum_direct_sum,
)

BACKENDS = ["numpy", "python"] + (["numba"] if spectral._jacobi_fast is not None else [])


def test_diagonal():
    assert eigenvalues_symmetric(np.diag([3.0, 1.0, 2.0])).values == (1.0, 2.0, 3.0)


def test_half_ones():
    s = eigenvalues_symmetric(0.5 * np.ones((2, 2)))
    assert s.values == pytest.approx((0.0, 1.0), abs=1e-15)


def test_hollow_triangle_spectrum(hollow_triangle):
    L = laplacian(hollow_triangle, constant_weight(hollow_triangle), 1).entries
    # characteristic polynomial x (x-3)^2 (sympy)
    assert eigenvalues_symmetric(L).values == pytest.approx((0.0, 3.0, 3.0), abs=1e-12)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues_symmetric(np.array([[1.0, 2.0], [0.0, 1.0]]))
    assert eigenvalues_symmetric(np.zeros((0, 0))).size == 0


def test_sweep_cap(monkeypatch):
    monkeypatch.setattr(spectral, "MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        eigenvalues_symmetric(np.array([[1.0, 1.0], [1.0, 2.0]]), backend="numpy")


@pytest.mark.parametrize("backend", BACKENDS)
def test_all_small_2x2_against_closed_form(backend):
    worst = 0.0
    for a, b, c in itertools.product(range(-2, 3), repeat=3):
        m, r = (a + c) / 2, sqrt(((a - c) / 2) ** 2 + b * b)
        got = eigenvalues_symmetric(np.array([[a, b], [b, c]], float), backend).values
        worst = max(worst, abs(got[0] - (m - r)), abs(got[1] - (m + r)))
    assert worst <= 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_trace_determinant_and_lapack(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    A = Q @ np.diag(rng.uniform(1, 3, n)) @ Q.T
    A = 0.5 * (A + A.T)
    s = eigenvalues_symmetric(A)
    scale = np.max(np.abs(A))
    assert abs(sum(s) - np.trace(A)) <= 1e-9 * n * scale
    assert abs(np.prod(s.array) / np.linalg.det(A) - 1) <= 1e-6
    assert np.max(np.abs(s.array - np.linalg.eigvalsh(A))) <= 1e-10 * scale


@pytest.mark.parametrize("seed", range(4))
def test_backends_agree(seed):
    rng = np.random.default_rng(100 + seed)
    G = rng.normal(size=(12, 12))
    A = G + G.T
    ref = eigenvalues_symmetric(A, "python").array
    for b in BACKENDS:
        assert np.max(np.abs(eigenvalues_symmetric(A, b).array - ref)) <= 1e-12


def test_deterministic():
    rng = np.random.default_rng(7)
    G = rng.normal(size=(9, 9))
    assert eigenvalues_symmetric(G + G.T) == eigenvalues_symmetric(G + G.T)


def test_spectrum_order_statistics():
    s = Spectrum((2.0, 0.0, 1.0, 1.0))
    assert s.values == (0.0, 1.0, 1.0, 2.0)
    assert s.smallest(1) == 0.0 and s.largest(1) == 2.0 and s.largest(4) == 0.0
    with pytest.raises(IndexError):
        s.smallest(5)


def test_direct_sum_examples():
    a = Spectrum((0.0, 1.0))
    assert spectrum_direct_sum([a, a]).values == (0.0, 0.0, 1.0, 1.0)
    assert spectrum_direct_sum([]).size == 0


def test_direct_sum_of_sphere_edge_links(sphere):
    from simplicial_garland.garland import link_spectra_direct_sum

    s = link_spectra_direct_sum(sphere, pure_cofacet_weight(sphere), 2, 1)
    assert s.values == pytest.approx([0.0] * 6 + [1.0] * 6, abs=1e-12)
    assert count_at_most(s, 0.0, 1e-9) == 6


spec_st = st.lists(st.floats(-10, 10, allow_nan=False), max_size=6).map(lambda v: Spectrum(tuple(v)))


@settings(max_examples=50, deadline=None)
@given(spec_st, spec_st, spec_st)
def test_direct_sum_is_commutative_and_associative(a, b, c):
    assert spectrum_direct_sum([a, b]) == spectrum_direct_sum([b, a])
    assert spectrum_direct_sum([spectrum_direct_sum([a, b]), c]) == spectrum_direct_sum([a, spectrum_direct_sum([b, c])])
    assert spectrum_direct_sum([a, b]).size == a.size + b.size


def test_count_at_most():
    s = Spectrum((0.0, 0.5, 1.0, 2.0))
    assert count_at_most(s, 0.5, 0) == 2
    assert count_at_most(s, 0.4999999999, 1e-9) == 2
    with pytest.raises(ValueError):
        count_at_most(s, 0.5, -1.0)


def test_exact_rank_examples(hollow_triangle):
    assert exact_rank(boundary_matrix(hollow_triangle, 1)) == 2
    assert exact_rank(np.zeros((3, 4), dtype=int)) == 0
    assert exact_rank(np.eye(5, dtype=int)) == 5
    assert exact_rank([[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 2), 1]]) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**31))
def test_exact_rank_matches_sympy(r, c, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(-2, 3, size=(r, c))
    if seed % 3 == 0 and r > 1:
        M[-1] = M[0] * 2 - M[-1] * 0
    assert exact_rank(M) == sympy.Matrix(M.tolist()).rank()


@pytest.mark.parametrize("X,k,betti", [
    (build_complex([(0, 1), (0, 2), (1, 2)]), 1, 1),
    (simplex_boundary(4), 2, 1),
    (full_simplex(4), 0, 0),
    (full_simplex(4), 1, 0),
    (full_simplex(4), 2, 0),
    (build_complex([(0,), (1,)]), 0, 1),
])
def test_homology_dimension(X, k, betti):
    res = homology_dimension(X, k)
    assert res.betti == betti
    assert res.rank_dk + res.rank_dk1 <= X.n_faces(k)


def test_kernel_dim_examples(hollow_triangle):
    L = laplacian(hollow_triangle, constant_weight(hollow_triangle), 1).entries
    assert numeric_kernel_dim(L) == 1
    F = full_simplex(4)
    assert numeric_kernel_dim(laplacian(F, constant_weight(F), 1).entries) == 0
    assert numeric_kernel_dim(np.zeros((4, 4))) == 4


@pytest.mark.parametrize("seed", range(10))
def test_eckmann_on_random_complexes(seed):
    X = random_pure(7, 1 + seed % 3, 0.5, seed=seed)
    for w in (constant_weight(X), pure_cofacet_weight(X)):
        for k in range(X.dim + 1):
            spec = eigenvalues_symmetric(laplacian(X, w, k).entries)
            assert numeric_kernel_dim(spec) == homology_dimension(X, k).betti
