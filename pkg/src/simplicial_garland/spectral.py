"""Eigenvalues, spectrum algebra, exact rank and reduced Betti numbers."""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Iterable, Sequence

import numpy as np

from .complex import ComplexError, SimplicialComplex
from .laplacian import boundary_matrix

SYMMETRY_TOL = 1e-10
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 100
KERNEL_TOL = 1e-8


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, sorted ascending."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(a > b for a, b in zip(vals, vals[1:])):
            vals = tuple(sorted(vals))
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def smallest(self, i: int) -> float:
        """``i``-th smallest eigenvalue, 1-based."""
        if not 1 <= i <= self.size:
            raise IndexError(f"index {i} out of range for spectrum of size {self.size}")
        return self.values[i - 1]

    def largest(self, i: int) -> float:
        """``i``-th largest eigenvalue, 1-based."""
        if not 1 <= i <= self.size:
            raise IndexError(f"index {i} out of range for spectrum of size {self.size}")
        return self.values[self.size - i]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.values)

    def __iter__(self):
        return iter(self.values)


def _rotation(app: float, aqq: float, apq: float) -> tuple[float, float]:
    theta = (aqq - app) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + sqrt(1.0 + theta * theta))
    c = 1.0 / sqrt(1.0 + t * t)
    return c, t * c


def _jacobi_numpy(A: np.ndarray, stop: float, max_sweeps: int) -> int:
    """Row-cyclic Jacobi with vectorized row/column updates; returns sweeps used or -1."""
    n = A.shape[0]
    rot = np.empty((2, 2))
    for sweep in range(max_sweeps):
        if np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)) <= stop:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app, aqq = A[p, p], A[q, q]
                if abs(apq) <= 1e-18 * (abs(app) + abs(aqq)):
                    # below rounding of the diagonal; the rotation is a no-op
                    A[p, q] = A[q, p] = 0.0
                    continue
                c, s = _rotation(app, aqq, apq)
                rot[0, 0] = rot[1, 1] = c
                rot[0, 1] = -s
                rot[1, 0] = s
                pq = [p, q]
                A[pq, :] = rot @ A[pq, :]
                A[:, pq] = A[:, pq] @ rot.T
                A[p, q] = A[q, p] = 0.0
    return -1


def _jacobi_scalar(A, stop, max_sweeps):
    """Same sweep order as :func:`_jacobi_numpy`, written as scalar loops for numba."""
    n = A.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += A[p, q] * A[p, q]
        if sqrt(2.0 * off) <= stop:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                if abs(apq) <= 1e-18 * (abs(app) + abs(aqq)):
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + sqrt(1.0 + theta * theta))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for j in range(n):
                    x, y = A[p, j], A[q, j]
                    A[p, j] = c * x - s * y
                    A[q, j] = s * x + c * y
                for i in range(n):
                    x, y = A[i, p], A[i, q]
                    A[i, p] = c * x - s * y
                    A[i, q] = s * x + c * y
                A[p, q] = 0.0
                A[q, p] = 0.0
    return -1


try:
    import numba
except ImportError:  # pragma: no cover - depends on the environment
    _jacobi_fast = None
else:
    _jacobi_fast = numba.njit(cache=True)(_jacobi_scalar)


def _jacobi_sweeps(A: np.ndarray, backend: str = "auto") -> np.ndarray:
    stop = OFFDIAG_TOL * (1.0 + np.linalg.norm(A))
    if backend == "auto":
        backend = "numba" if _jacobi_fast is not None else "numpy"
    if backend == "numba":
        if _jacobi_fast is None:
            raise RuntimeError("numba is not installed")
        used = _jacobi_fast(A, stop, MAX_SWEEPS)
    elif backend == "numpy":
        used = _jacobi_numpy(A, stop, MAX_SWEEPS)
    elif backend == "python":
        used = _jacobi_scalar(A, stop, MAX_SWEEPS)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if used < 0:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.diag(A).copy()


def eigenvalues_symmetric(A, backend: str = "auto") -> Spectrum:
    """Full spectrum of a dense symmetric matrix by cyclic Jacobi rotations.

    The input is symmetrized by averaging after checking that it is
    symmetric to within ``SYMMETRY_TOL`` relative to its scale.
    ``backend`` picks the sweep kernel: ``"numba"`` (compiled scalar loops),
    ``"numpy"`` (vectorized rotations) or ``"python"``; ``"auto"`` prefers
    numba when importable.  All three perform the same rotations.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.size == 0:
        return Spectrum(())
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.T)) > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    return Spectrum(tuple(sorted(_jacobi_sweeps(A, backend))))


def spectrum_direct_sum(spectra: Iterable[Spectrum]) -> Spectrum:
    vals: list[float] = []
    for s in spectra:
        vals.extend(s.values)
    return Spectrum(tuple(sorted(vals)))


def count_at_most(s: Spectrum, t: float, tol: float = 0.0) -> int:
    """Number of eigenvalues ``<= t + tol``."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return bisect.bisect_right(s.values, float(t) + tol)


def exact_rank(M) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object).tolist()]
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        # partial pivot on the largest numerator magnitude
        piv = max(range(rank, n_rows), key=lambda r: abs(rows[r][c].numerator))
        if rows[piv][c] == 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, n_rows):
            f = rows[r][c]
            if f == 0:
                continue
            f = f / pr[c]
            row = rows[r]
            for j in range(c, n_cols):
                if pr[j]:
                    row[j] -= f * pr[j]
        rank += 1
    return rank


@dataclass(frozen=True)
class BettiResult:
    k: int
    betti: int
    rank_dk: int
    rank_dk1: int


def homology_dimension(X: SimplicialComplex, k: int) -> BettiResult:
    """Reduced Betti number over the reals, with the empty face as ``X(-1)``."""
    if X.is_empty:
        raise ComplexError("homology of the empty complex is not defined here")
    if not 0 <= k <= X.dim:
        raise ComplexError(f"need 0 <= k <= dim(X) = {X.dim}, got k={k}")
    r_k = exact_rank(boundary_matrix(X, k))
    r_k1 = exact_rank(boundary_matrix(X, k + 1)) if k < X.dim else 0
    betti = X.n_faces(k) - r_k - r_k1
    assert betti >= 0
    return BettiResult(k, betti, r_k, r_k1)


def numeric_kernel_dim(A, tol: float = KERNEL_TOL) -> int:
    """Eigenvalues below ``tol * max(1, lambda_max)``."""
    spec = A if isinstance(A, Spectrum) else eigenvalues_symmetric(A)
    if spec.size == 0:
        return 0
    cutoff = tol * max(1.0, spec.values[-1])
    return sum(1 for v in spec.values if v < cutoff)


def spectrum_of(values: Sequence[float]) -> Spectrum:
    return Spectrum(tuple(values))
