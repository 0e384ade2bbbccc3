"""Local-to-global interlacing and exact checks of the Garland identities.

A :class:`LocalSystem` is a family of symmetric blocks ``M_i`` on subsets
of a ground set together with coefficients ``s_i`` whose squares sum to one
at every ground element.  The assembled matrix
``M[a, b] = sum_i s_i(a) s_i(b) M_i[a, b]`` equals ``S^T (+M_i) S`` for a
matrix ``S`` with orthonormal columns, so its spectrum interlaces that of
the direct sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, sqrt
from typing import Hashable, Sequence

import numpy as np

from .complex import ComplexError, Face, SimplicialComplex, incidence_sign
from .garland import admissible_links, link_laplacian
from .laplacian import WeightFunction, degree_matrix_R, laplacian
from .spectral import eigenvalues_symmetric, spectrum_direct_sum

NORMALIZATION_TOL = 1e-12
SLACK_TOL = 1e-8


@dataclass
class Block:
    labels: tuple[Hashable, ...]
    matrix: np.ndarray
    coeffs: np.ndarray


@dataclass
class LocalSystem:
    ground_set: list[Hashable]
    blocks: list[Block]

    def __post_init__(self):
        pos = {a: i for i, a in enumerate(self.ground_set)}
        if len(pos) != len(self.ground_set):
            raise ValueError("ground set labels must be distinct")
        self._pos = pos
        norms = np.zeros(len(self.ground_set))
        for b in self.blocks:
            b.matrix = np.asarray(b.matrix, dtype=float)
            b.coeffs = np.asarray(b.coeffs, dtype=float)
            m = len(b.labels)
            if b.matrix.shape != (m, m) or b.coeffs.shape != (m,):
                raise ValueError("block matrix/coefficients do not match its labels")
            if m and np.max(np.abs(b.matrix - b.matrix.T)) > 1e-10 * max(1.0, np.max(np.abs(b.matrix))):
                raise ValueError("block matrix is not symmetric")
            for a, s in zip(b.labels, b.coeffs):
                if a not in pos:
                    raise ValueError(f"block label {a!r} not in ground set")
                norms[pos[a]] += s * s
        bad = np.abs(norms - 1.0) > NORMALIZATION_TOL
        if np.any(bad):
            a = self.ground_set[int(np.argmax(bad))]
            raise ValueError(f"coefficients at {a!r} are not normalized")

    def position(self, label) -> int:
        return self._pos[label]


def direct_sum_matrix(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    o = 0
    for b in blocks:
        m = b.shape[0]
        out[o:o + m, o:o + m] = b
        o += m
    return out


def assemble_global(sys: LocalSystem) -> np.ndarray:
    n = len(sys.ground_set)
    M = np.zeros((n, n))
    for b in sys.blocks:
        idx = np.array([sys.position(a) for a in b.labels], dtype=int)
        if idx.size:
            M[np.ix_(idx, idx)] += np.outer(b.coeffs, b.coeffs) * b.matrix
    return M


def projection_matrix(sys: LocalSystem) -> tuple[np.ndarray, list[tuple[int, Hashable]]]:
    """``S`` with rows ``(block, label)`` and columns the ground set."""
    rows = [(i, a) for i, b in enumerate(sys.blocks) for a in b.labels]
    S = np.zeros((len(rows), len(sys.ground_set)))
    r = 0
    for b in sys.blocks:
        for a, s in zip(b.labels, b.coeffs):
            S[r, sys.position(a)] = s
            r += 1
    return S, rows


@dataclass(frozen=True)
class InterlaceVerdict:
    holds: bool
    max_violation: float
    n_checked: int = 0


def _interlace(small, big, scale: float) -> InterlaceVerdict:
    # small: spectrum of the compressed matrix, big: of the ambient one
    worst = 0.0
    n = small.size
    for i in range(1, n + 1):
        worst = max(worst, big.smallest(i) - small.smallest(i),
                    small.largest(i) - big.largest(i))
    return InterlaceVerdict(worst <= SLACK_TOL * scale, worst, 2 * n)


def verify_interlacing(sys: LocalSystem) -> InterlaceVerdict:
    """Check both interlacing families between ``M`` and the direct sum."""
    M = assemble_global(sys)
    small = eigenvalues_symmetric(M)
    big = spectrum_direct_sum(eigenvalues_symmetric(b.matrix) for b in sys.blocks)
    scale = max([1.0] + [abs(v) for v in big.values])
    return _interlace(small, big, scale)


def verify_cauchy(A, S) -> InterlaceVerdict:
    A = np.asarray(A, dtype=float)
    S = np.asarray(S, dtype=float)
    if np.max(np.abs(S.T @ S - np.eye(S.shape[1]))) > 1e-10:
        raise ValueError("columns of S are not orthonormal")
    B = S.T @ A @ S
    big = eigenvalues_symmetric(A)
    scale = max([1.0] + [abs(v) for v in big.values])
    return _interlace(eigenvalues_symmetric(0.5 * (B + B.T)), big, scale)


def verify_weyl(A, B) -> InterlaceVerdict:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError("A and B must be square and of the same size")
    sa, sb, sab = (eigenvalues_symmetric(m) for m in (A, B, A + B))
    worst = 0.0
    for i in range(1, sa.size + 1):
        worst = max(worst,
                    sa.smallest(i) + sb.smallest(1) - sab.smallest(i),
                    sab.largest(i) - sa.largest(i) - sb.largest(1))
    scale = max(1.0, float(np.max(np.abs(A), initial=0)), float(np.max(np.abs(B), initial=0)))
    return InterlaceVerdict(worst <= SLACK_TOL * scale, worst, 2 * sa.size)


def random_local_system(rng: np.random.Generator, max_ground: int = 10,
                        max_block: int = 6, max_blocks: int = 5) -> LocalSystem:
    """Random system with every ground element covered by some block."""
    n = int(rng.integers(1, max_ground + 1))
    ground = list(range(n))
    while True:
        m = int(rng.integers(1, max_blocks + 1))
        subsets = []
        for _ in range(m):
            size = int(rng.integers(1, min(max_block, n) + 1))
            subsets.append(sorted(rng.choice(n, size=size, replace=False).tolist()))
        if set().union(*subsets) == set(ground):
            break
    raw = [rng.uniform(0.1, 1.0, size=len(sub)) * rng.choice([-1.0, 1.0], size=len(sub))
           for sub in subsets]
    norm = np.zeros(n)
    for sub, r in zip(subsets, raw):
        norm[sub] += r * r
    blocks = []
    for sub, r in zip(subsets, raw):
        G = rng.normal(size=(len(sub), len(sub)))
        blocks.append(Block(tuple(sub), G + G.T, r / np.sqrt(norm[sub])))
    return LocalSystem(ground, blocks)


# -- the Garland system ---------------------------------------------------

def _inversions(sigma: Face, eta: Face) -> int:
    e = set(eta)
    return sum(1 for i in sigma if i not in e for j in eta if i > j)


def s_sign(eta: Face, sigma: Face) -> int:
    return -1 if _inversions(sigma, eta) % 2 else 1


def _check_s_args(eta: Face, sigma: Face, k: int | None, l: int | None) -> tuple[int, int]:
    if not set(eta) <= set(sigma) or len(eta) == 0:
        raise ComplexError(f"{eta} must be a nonempty face of {sigma}")
    kk, ll = len(sigma) - 1, len(eta) - 1
    if (k is not None and k != kk) or (l is not None and l != ll):
        raise ComplexError(f"dimensions do not match faces {eta} in {sigma}")
    return kk, ll


def s_coefficient(eta: Face, sigma: Face, k: int | None = None, l: int | None = None) -> float:
    """``binom(k+1, l+1)^{-1/2}`` with the sign of the (sigma\\eta, eta) inversions."""
    kk, ll = _check_s_args(eta, sigma, k, l)
    return s_sign(eta, sigma) / sqrt(comb(kk + 1, ll + 1))


def s_coefficient_exact(eta: Face, sigma: Face, k: int | None = None,
                        l: int | None = None) -> tuple[int, Fraction]:
    """``(sign, square)`` of the coefficient, both exact."""
    kk, ll = _check_s_args(eta, sigma, k, l)
    return s_sign(eta, sigma), Fraction(1, comb(kk + 1, ll + 1))


def _minus(sigma: Face, eta: Face) -> Face:
    e = set(eta)
    return tuple(v for v in sigma if v not in e)


def _union(a: Face, b: Face) -> Face:
    return tuple(sorted(set(a) | set(b)))


def garland_local_system(X: SimplicialComplex, w: WeightFunction, k: int, l: int,
                         flavor: str = "total") -> LocalSystem:
    """Ground set ``X(k)``; one block per admissible ``l``-face (symmetrized link Laplacians)."""
    blocks = []
    for eta in admissible_links(X, k, l):
        L = link_laplacian(X, w, eta, k, flavor)
        labels = tuple(_union(f, eta) for f in L.faces)
        coeffs = np.array([s_coefficient(eta, s) for s in labels])
        blocks.append(Block(labels, L.entries, coeffs))
    return LocalSystem(list(X.faces(k)), blocks)


def garland_target(X: SimplicialComplex, w: WeightFunction, k: int, l: int) -> np.ndarray:
    """``((k-l) L_k + (l+1) R_k) / (k+1)``, symmetrized total Laplacian."""
    L = laplacian(X, w, k, "total").entries
    R = degree_matrix_R(X, w, k).entries
    return ((k - l) * L + (l + 1) * R) / (k + 1)


# -- sign lemmas ------------------------------------------------------------

@dataclass
class SignVerdict:
    holds: bool
    checked: int
    failures: list = field(default_factory=list)


def verify_sign_union(X: SimplicialComplex, k: int) -> SignVerdict:
    """``(s|t : s)(s|t : t) = -(s : s&t)(t : s&t)`` for adjacent ``k``-faces."""
    checked, bad = 0, []
    for rho in X.faces(k + 1):
        facets = [rho[:i] + rho[i + 1:] for i in range(len(rho))]
        for a in facets:
            for b in facets:
                if a == b:
                    continue
                inter = tuple(v for v in a if v in b)
                lhs = incidence_sign(rho, a) * incidence_sign(rho, b)
                rhs = -incidence_sign(a, inter) * incidence_sign(b, inter)
                checked += 1
                if lhs != rhs:
                    bad.append((a, b))
    return SignVerdict(not bad, checked, bad)


def verify_sign1(X: SimplicialComplex, k: int, l: int) -> SignVerdict:
    """``s_eta(tau)(tau-eta : sigma-eta) = sqrt((k-l)/(k+1)) s_eta(sigma)(tau : sigma)``.

    Both sides are compared exactly: signs directly, magnitudes squared.
    """
    if not 0 <= l < k:
        raise ComplexError(f"need 0 <= l < k, got k={k}, l={l}")
    checked, bad = 0, []
    for eta in X.faces(l):
        for tau in X.cofaces_of_dim(eta, k):
            for u in _minus(tau, eta):
                sigma = tuple(v for v in tau if v != u)
                sg_t, sq_t = s_coefficient_exact(eta, tau)
                sg_s, sq_s = s_coefficient_exact(eta, sigma)
                lhs_sign = sg_t * incidence_sign(_minus(tau, eta), _minus(sigma, eta))
                rhs_sign = sg_s * incidence_sign(tau, sigma)
                lhs_sq = sq_t
                rhs_sq = Fraction(k - l, k + 1) * sq_s
                checked += 1
                if lhs_sign != rhs_sign or lhs_sq != rhs_sq:
                    bad.append((eta, tau, u))
    return SignVerdict(not bad, checked, bad)


def verify_sign2(X: SimplicialComplex, k: int, l: int) -> SignVerdict:
    """``(s : s&t)(t : s&t) = C(k+1,l+1) s_eta(s) s_eta(t) (s-eta : .)(t-eta : .)``."""
    if not 0 <= l < k:
        raise ComplexError(f"need 0 <= l < k, got k={k}, l={l}")
    checked, bad = 0, []
    c = comb(k + 1, l + 1)
    for eta in X.faces(l):
        star = X.cofaces_of_dim(eta, k)
        for sigma in star:
            for tau in star:
                inter = tuple(v for v in sigma if v in tau)
                if len(inter) != k:
                    continue
                lhs = incidence_sign(sigma, inter) * incidence_sign(tau, inter)
                (a, qa), (b, qb) = s_coefficient_exact(eta, sigma), s_coefficient_exact(eta, tau)
                # c * s(sigma) s(tau) = a * b exactly since qa = qb = 1/c
                assert qa == qb == Fraction(1, c)
                ie = _minus(inter, eta)
                rhs = a * b * incidence_sign(_minus(sigma, eta), ie) * incidence_sign(_minus(tau, eta), ie)
                checked += 1
                if lhs != rhs:
                    bad.append((eta, sigma, tau))
    return SignVerdict(not bad, checked, bad)


# -- propositions: localized link Laplacians vs global ones -----------------

@dataclass(frozen=True)
class PropVerdict:
    holds: bool
    max_abs_diff: float
    entries: int
    exact: bool


def _prop_sides(X, w, k, l, flavor, exact):
    faces = X.faces(k)
    n = len(faces)
    c = comb(k + 1, l + 1)
    symmetry = "operator" if exact else "symmetrized"
    if exact:
        lhs = np.empty((n, n), dtype=object)
        lhs.fill(Fraction(0))
    else:
        lhs = np.zeros((n, n))
    for eta in admissible_links(X, k, l):
        L = link_laplacian(X, w, eta, k, flavor, symmetry, exact)
        labels = [X.index(_union(f, eta)) for f in L.faces]
        signs = [s_sign(eta, _union(f, eta)) for f in L.faces]
        for a, (ia, sa) in enumerate(zip(labels, signs)):
            for b, (ib, sb) in enumerate(zip(labels, signs)):
                v = L.entries[a, b]
                if v == 0:
                    continue
                if exact:
                    lhs[ia, ib] += Fraction(sa * sb * (k + 1), c) * v
                else:
                    lhs[ia, ib] += sa * sb * (k + 1) / c * v
    G = laplacian(X, w, k, flavor, symmetry, exact).entries
    rhs = (k - l) * G
    if flavor == "up":
        rhs = rhs + (l + 1) * degree_matrix_R(X, w, k, exact).entries
    return lhs, rhs


def _verify_prop(X, w, k, l, flavor, exact) -> PropVerdict:
    if X.is_empty or not 0 <= l < k <= X.dim:
        raise ComplexError(f"need 0 <= l < k <= dim(X), got k={k}, l={l}")
    if exact and any(not isinstance(w[f], Fraction) for f in X):
        raise ValueError("exact mode needs rational weights")
    lhs, rhs = _prop_sides(X, w, k, l, flavor, exact)
    diff = lhs - rhs
    if exact:
        worst = max((abs(v) for v in diff.flat), default=Fraction(0))
        return PropVerdict(worst == 0, float(worst), diff.size, True)
    worst = float(np.max(np.abs(diff), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(rhs), initial=0.0)))
    return PropVerdict(worst <= 1e-10 * scale, worst, diff.size, False)


def verify_prop_upper(X: SimplicialComplex, w: WeightFunction, k: int, l: int,
                      exact: bool = True) -> PropVerdict:
    """Localized upper link Laplacians sum to ``(k-l) L+_k + (l+1) R_k``.

    Exact mode compares the operator (non-symmetric, rational) forms, which
    is the same identity conjugated by ``W_k^{1/2}``.
    """
    return _verify_prop(X, w, k, l, "up", exact)


def verify_prop_lower(X: SimplicialComplex, w: WeightFunction, k: int, l: int,
                      exact: bool = True) -> PropVerdict:
    """Localized lower link Laplacians sum to ``(k-l) L-_k``."""
    return _verify_prop(X, w, k, l, "down", exact)
