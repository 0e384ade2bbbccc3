"""Weight functions, boundary matrices and weighted Laplacians.

Six Laplacian variants are available: ``up``, ``down`` and ``total``, each
either as the (generally non-symmetric) ``operator`` or its ``symmetrized``
conjugate ``W^{1/2} L W^{-1/2}``.  Weights are exact :class:`Fraction`
values; operator matrices can be produced exactly (object arrays of
fractions) while symmetrized ones are always floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from numbers import Rational
from typing import Iterator, Literal, Mapping

import numpy as np

from .complex import ComplexError, Face, SimplicialComplex, incidence_sign

Flavor = Literal["up", "down", "total"]
Symmetry = Literal["operator", "symmetrized"]
FLAVORS = ("up", "down", "total")
SYMMETRIES = ("operator", "symmetrized")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, (float, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational weight")


class WeightFunction(Mapping[Face, Fraction]):
    """Strictly positive rational weight on every face of a complex."""

    def __init__(self, complex_: SimplicialComplex, values: Mapping[Face, object]):
        self.complex = complex_
        vals: dict[Face, Fraction] = {}
        for face in complex_:
            if face not in values:
                raise ComplexError(f"weight missing for face {face}")
            w = _as_fraction(values[face])
            if w <= 0:
                raise ValueError(f"weights must be positive; w{face} = {w}")
            vals[face] = w
        self._values = vals

    def __getitem__(self, face: Face) -> Fraction:
        return self._values[face]

    def __iter__(self) -> Iterator[Face]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __call__(self, face: Face) -> Fraction:
        return self._values[face]

    def __repr__(self) -> str:
        return f"WeightFunction({len(self)} faces)"

    def diagonal(self, k: int, exact: bool = False) -> np.ndarray:
        vals = [self._values[f] for f in self.complex.faces(k)]
        if exact:
            return np.array(vals, dtype=object)
        return np.array([float(v) for v in vals], dtype=float)


def _require_nonempty(X: SimplicialComplex) -> None:
    if X.is_empty:
        raise ComplexError("operation is undefined on the empty complex")


def constant_weight(X: SimplicialComplex, value=1) -> WeightFunction:
    _require_nonempty(X)
    return WeightFunction(X, {f: value for f in X})


def pure_cofacet_weight(X: SimplicialComplex, d: int | None = None) -> WeightFunction:
    """Weight each face by the number of top-dimensional faces containing it."""
    _require_nonempty(X)
    if d is None:
        d = X.dim
    if not X.is_pure(d):
        raise ComplexError(f"complex is not pure of dimension {d}")
    counts: dict[Face, int] = {f: 0 for f in X}
    for top in X.faces(d):
        s = set(top)
        for f in X:
            if s.issuperset(f):
                counts[f] += 1
    return WeightFunction(X, counts)


def link_weight(w: WeightFunction, eta: Face) -> WeightFunction:
    """Induced weight ``w_eta(sigma) = w(sigma | eta)`` on the link of ``eta``."""
    lk = w.complex.link(eta)
    return WeightFunction(lk, {s: w[tuple(sorted(s + eta))] for s in lk})


# -- boundary matrices ---------------------------------------------------

def _check_k(X: SimplicialComplex, k: int) -> None:
    _require_nonempty(X)
    if not 0 <= k <= X.dim:
        raise ComplexError(f"need 0 <= k <= dim(X) = {X.dim}, got k={k}")


def boundary_matrix(X: SimplicialComplex, k: int) -> np.ndarray:
    """Integer matrix ``rows = X(k-1)``, ``cols = X(k)`` of incidence signs."""
    _check_k(X, k)
    rows, cols = X.faces(k - 1), X.faces(k)
    B = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, tau in enumerate(cols):
        for i in range(len(tau)):
            sigma = tau[:i] + tau[i + 1:]
            # removing tau[i] leaves i smaller vertices
            B[X.index(sigma), j] = -1 if i % 2 else 1
    return B


def boundary_columns(X: SimplicialComplex, k: int) -> list[list[tuple[int, int]]]:
    """Sparse ``boundary_matrix``: per column, ``(row, sign)`` pairs."""
    cols = []
    for tau in X.faces(k):
        cols.append([(X.index(tau[:i] + tau[i + 1:]), incidence_sign(tau, tau[:i] + tau[i + 1:]))
                     for i in range(len(tau))])
    return cols


# -- Laplacians ----------------------------------------------------------

@dataclass(frozen=True)
class LaplacianMatrix:
    """Dense square matrix indexed by ``faces`` (the k-faces, lex order)."""

    entries: np.ndarray
    k: int
    flavor: str
    symmetry: str
    faces: tuple[Face, ...]

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def to_float(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def _zeros(n: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((n, n), dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros((n, n))


def _weighted_gram(X: SimplicialComplex, w: WeightFunction, k: int, exact: bool) -> np.ndarray:
    """``d_{k+1} W_{k+1} d_{k+1}^T`` accumulated column by column."""
    n = X.n_faces(k)
    G = _zeros(n, exact)
    for tau, col in zip(X.faces(k + 1), boundary_columns(X, k + 1)):
        wt = w[tau] if exact else float(w[tau])
        for i, si in col:
            for j, sj in col:
                G[i, j] += si * sj * wt
    return G


def _lower_gram(X: SimplicialComplex, w: WeightFunction, k: int, exact: bool) -> np.ndarray:
    """``d_k^T W_{k-1}^{-1} d_k``."""
    n = X.n_faces(k)
    G = _zeros(n, exact)
    cols = boundary_columns(X, k)
    rows_of: dict[int, list[tuple[int, int]]] = {}
    for j, col in enumerate(cols):
        for i, s in col:
            rows_of.setdefault(i, []).append((j, s))
    lower = X.faces(k - 1)
    for i, entries in rows_of.items():
        inv = 1 / w[lower[i]] if exact else 1.0 / float(w[lower[i]])
        for a, sa in entries:
            for b, sb in entries:
                G[a, b] += sa * sb * inv
    return G


def laplacian(X: SimplicialComplex, w: WeightFunction, k: int,
              flavor: Flavor = "total", symmetry: Symmetry = "symmetrized",
              exact: bool = False) -> LaplacianMatrix:
    """Weighted Laplacian from boundary products.

    ``up``  : ``W_k^{-1} d_{k+1} W_{k+1} d_{k+1}^T`` (zero when ``k = dim X``)
    ``down``: ``d_k^T W_{k-1}^{-1} d_k W_k``
    ``total`` is their sum.  ``exact=True`` is only meaningful for the
    operator form; symmetrized matrices carry square roots.
    """
    _check_k(X, k)
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    if symmetry not in SYMMETRIES:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    if exact and symmetry != "operator":
        raise ValueError("exact arithmetic is only available for the operator form")
    if w.complex is not X and w.complex != X:
        raise ComplexError("weight function belongs to a different complex")
    n = X.n_faces(k)
    wk = w.diagonal(k, exact=exact)
    M = _zeros(n, exact)

    if flavor in ("up", "total") and k < X.dim:
        G = _weighted_gram(X, w, k, exact)
        if symmetry == "operator":
            M = M + G / wk[:, None]
        else:
            r = 1.0 / np.sqrt(wk)
            M = M + r[:, None] * G * r[None, :]
    if flavor in ("down", "total"):
        G = _lower_gram(X, w, k, exact)
        if symmetry == "operator":
            M = M + G * wk[None, :]
        else:
            r = np.sqrt(wk)
            M = M + r[:, None] * G * r[None, :]
    return LaplacianMatrix(M, k, flavor, symmetry, X.faces(k))


def laplacian_by_formula(X: SimplicialComplex, w: WeightFunction, k: int,
                         flavor: Flavor = "total", symmetry: Symmetry = "symmetrized",
                         exact: bool = False) -> LaplacianMatrix:
    """Laplacian built entrywise from the explicit degree/adjacency formulas.

    No boundary matrix is formed.  Symmetrized off-diagonal entries are
    ``-(s:s&t)(t:s&t) w(s|t)/sqrt(w(s)w(t))`` (up) and
    ``(s:s&t)(t:s&t) sqrt(w(s)w(t))/w(s&t)`` (down).  The operator variant
    replaces the square-root factor by ``w(s|t)/w(s)`` and ``w(t)/w(s&t)``.
    """
    _check_k(X, k)
    if exact and symmetry != "operator":
        raise ValueError("exact arithmetic is only available for the operator form")
    faces = X.faces(k)
    n = len(faces)
    num = (lambda q: q) if exact else float
    M = _zeros(n, exact)
    op = symmetry == "operator"
    for a, sigma in enumerate(faces):
        ws = w[sigma]
        if flavor in ("up", "total"):
            for tau_up in X.cofacets(sigma):
                M[a, a] += num(w[tau_up] / ws)
                # every other k-face of tau_up is adjacent to sigma through it
                for i in range(len(tau_up)):
                    tau = tau_up[:i] + tau_up[i + 1:]
                    if tau == sigma:
                        continue
                    inter = tuple(v for v in sigma if v in tau)
                    sign = incidence_sign(sigma, inter) * incidence_sign(tau, inter)
                    b = X.index(tau)
                    if op:
                        M[a, b] += num(-sign * w[tau_up] / ws)
                    else:
                        M[a, b] += -sign * float(w[tau_up]) / sqrt(float(ws) * float(w[tau]))
        if flavor in ("down", "total"):
            for i in range(len(sigma)):
                inter = sigma[:i] + sigma[i + 1:]
                M[a, a] += num(ws / w[inter])
                for tau in X.cofacets(inter):
                    if tau == sigma:
                        continue
                    sign = incidence_sign(sigma, inter) * incidence_sign(tau, inter)
                    b = X.index(tau)
                    if op:
                        M[a, b] += num(sign * w[tau] / w[inter])
                    else:
                        M[a, b] += sign * sqrt(float(ws) * float(w[tau])) / float(w[inter])
    return LaplacianMatrix(M, k, flavor, symmetry, faces)


def degree_matrix_R(X: SimplicialComplex, w: WeightFunction, k: int,
                    exact: bool = False) -> LaplacianMatrix:
    """Diagonal matrix of weighted up-degrees ``sum_v w(s+v)/w(s)``."""
    _check_k(X, k)
    degs = up_degrees(X, w, k)
    n = len(degs)
    M = _zeros(n, exact)
    for i, d in enumerate(degs):
        M[i, i] = d if exact else float(d)
    return LaplacianMatrix(M, k, "degree", "symmetrized", X.faces(k))


def up_degrees(X: SimplicialComplex, w: WeightFunction, k: int) -> list[Fraction]:
    out = []
    for sigma in X.faces(k):
        ws = w[sigma]
        out.append(sum((w[t] / ws for t in X.cofacets(sigma)), Fraction(0)))
    return out


def max_up_degree(X: SimplicialComplex, w: WeightFunction, k: int) -> Fraction:
    """Largest weighted up-degree over ``X(k)`` (exact)."""
    if X.is_empty or X.n_faces(k) == 0:
        raise ComplexError(f"X({k}) is empty")
    return max(up_degrees(X, w, k))


def min_up_degree(X: SimplicialComplex, w: WeightFunction, k: int) -> Fraction:
    """Smallest weighted up-degree over ``X(k)`` (exact)."""
    if X.is_empty or X.n_faces(k) == 0:
        raise ComplexError(f"X({k}) is empty")
    return min(up_degrees(X, w, k))
