"""Garland-type spectral bounds via eigenvalue interlacing.

For ``0 <= l < k <= dim X`` and every ``1 <= i <= |X(k)|``::

    (k-l) lam_i(L_k) >= (k+1) lam_i(+_eta L_{k-l-1}(lk eta)) - (l+1) Delta_k

where the direct sum runs over ``l``-faces whose link has dimension at least
``k-l-1``, together with the homology count it implies, the analogous upper
bound for upper Laplacians, and the classical ``i = 1`` statements.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .complex import ComplexError, Face, SimplicialComplex
from .laplacian import (
    WeightFunction,
    constant_weight,
    laplacian,
    link_weight,
    max_up_degree,
    min_up_degree,
    pure_cofacet_weight,
)
from .spectral import (
    Spectrum,
    count_at_most,
    eigenvalues_symmetric,
    homology_dimension,
    spectrum_direct_sum,
)

SLACK_TOL = 1e-8


def threshold_tol(delta: float) -> float:
    """Default tolerance for ``lambda <= threshold`` counting."""
    return 1e-9 * max(1.0, float(delta))


def _check_pair(X: SimplicialComplex, k: int, l: int) -> None:
    if X.is_empty:
        raise ComplexError("empty complex")
    if not 0 <= l < k <= X.dim:
        raise ComplexError(f"need 0 <= l < k <= dim(X) = {X.dim}, got k={k}, l={l}")


def admissible_links(X: SimplicialComplex, k: int, l: int) -> list[Face]:
    """``l``-faces whose link has dimension ``>= k-l-1`` (lex order)."""
    return [eta for eta in X.faces(l) if len(X.cofaces_of_dim(eta, k)) > 0]


def link_laplacian(X: SimplicialComplex, w: WeightFunction, eta: Face, k: int,
                   flavor: str = "total", symmetry: str = "symmetrized", exact: bool = False):
    """The ``(k - dim(eta) - 1)``-Laplacian of the link of ``eta`` under ``w_eta``."""
    lk = X.link(eta)
    return laplacian(lk, link_weight(w, eta), k - len(eta), flavor, symmetry, exact)


def link_spectra(X: SimplicialComplex, w: WeightFunction, k: int, l: int,
                 flavor: str = "total") -> dict[Face, Spectrum]:
    _check_pair(X, k, l)
    return {eta: eigenvalues_symmetric(link_laplacian(X, w, eta, k, flavor).entries)
            for eta in admissible_links(X, k, l)}


def link_spectra_direct_sum(X: SimplicialComplex, w: WeightFunction, k: int, l: int,
                            flavor: str = "total") -> Spectrum:
    """Spectrum of the direct sum of admissible link Laplacians."""
    spectra = link_spectra(X, w, k, l, flavor)
    if not spectra and X.n_faces(k):
        warnings.warn(f"no admissible links for k={k}, l={l}", RuntimeWarning, stacklevel=2)
    return spectrum_direct_sum(spectra[eta] for eta in sorted(spectra))


@dataclass
class GarlandReport:
    k: int
    l: int
    delta: Fraction
    threshold: float
    link_spectrum: Spectrum
    laplacian_spectrum: Spectrum
    lower_bounds: list[float]
    homology_bound: int
    exact_betti: int
    inequalities_hold: bool
    max_violation: float
    tol: float
    weighting: str = "custom"
    no_admissible_links: bool = False
    slacks: list[float] = field(default_factory=list)

    @property
    def n_violations(self) -> int:
        allow = SLACK_TOL * (1.0 + float(self.delta))
        return sum(1 for s in self.slacks if s < -allow)

    @property
    def bound_is_sound(self) -> bool:
        return self.homology_bound >= self.exact_betti


def _resolve_weight(X: SimplicialComplex, w) -> tuple[WeightFunction, str]:
    if isinstance(w, WeightFunction):
        return w, "custom"
    if w in (None, "unit"):
        return constant_weight(X), "unit"
    if w == "pure":
        return pure_cofacet_weight(X, X.dim), "pure"
    raise ValueError(f"unknown weighting {w!r}")


def garland_lower_bounds(X: SimplicialComplex, w, k: int, l: int,
                         tol: float | None = None) -> GarlandReport:
    """Evaluate the interlacing lower bound at every index ``i``.

    ``w`` is a :class:`WeightFunction` or one of ``"unit"``/``"pure"``.
    Also fills in the homology bound and the exact Betti number so the
    report audits itself.
    """
    w, weighting = _resolve_weight(X, w)
    _check_pair(X, k, l)
    n_k = X.n_faces(k)
    delta = max_up_degree(X, w, k)
    thr = float((l + 1) * delta / (k + 1))
    if tol is None:
        tol = threshold_tol(delta)

    lk_spec = link_spectra_direct_sum(X, w, k, l)
    lap_spec = eigenvalues_symmetric(laplacian(X, w, k, "total").entries)
    betti = homology_dimension(X, k).betti

    fdelta = float(delta)
    lower = [((k + 1) * lk_spec.smallest(i) - (l + 1) * fdelta) / (k - l)
             for i in range(1, min(n_k, lk_spec.size) + 1)]
    # sum of link block sizes is C(k+1, l+1)|X(k)| >= |X(k)|
    assert len(lower) == n_k
    slacks = [(k - l) * lap_spec.smallest(i) - (k - l) * lower[i - 1]
              for i in range(1, n_k + 1)]
    worst = min(slacks, default=0.0)
    allow = SLACK_TOL * (1.0 + fdelta)
    return GarlandReport(
        k=k, l=l, delta=delta, threshold=thr,
        link_spectrum=lk_spec, laplacian_spectrum=lap_spec,
        lower_bounds=lower,
        homology_bound=count_at_most(lk_spec, thr, tol),
        exact_betti=betti,
        inequalities_hold=worst >= -allow,
        max_violation=max(0.0, -worst),
        tol=tol, weighting=weighting,
        no_admissible_links=lk_spec.size == 0 and n_k > 0,
        slacks=slacks,
    )


def homology_upper_bound(X: SimplicialComplex, w, k: int, l: int,
                         tol: float | None = None) -> GarlandReport:
    """Count of link eigenvalues at most ``(l+1) Delta_k / (k+1)``.

    The count bounds the ``k``-th reduced Betti number from above; with
    ``l = k-1`` this is the Hino-Kanazawa bound.
    """
    return garland_lower_bounds(X, w, k, l, tol)


class BoundRow(NamedTuple):
    i: int
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def garland_upper_bounds(X: SimplicialComplex, w, k: int, l: int) -> list[BoundRow]:
    """``(k-l) lam^max_i(L+_k) <= (k+1) lam^max_i(+_eta L+_link) - (l+1) delta_k``."""
    w, _ = _resolve_weight(X, w)
    _check_pair(X, k, l)
    if k >= X.dim:
        raise ComplexError(f"upper bound needs k <= dim(X) - 1 = {X.dim - 1}, got k={k}")
    small = min_up_degree(X, w, k)
    up = eigenvalues_symmetric(laplacian(X, w, k, "up").entries)
    lk = link_spectra_direct_sum(X, w, k, l, flavor="up")
    rows = []
    for i in range(1, X.n_faces(k) + 1):
        rows.append(BoundRow(i, (k - l) * up.largest(i),
                             (k + 1) * lk.largest(i) - (l + 1) * float(small)))
    return rows


def upper_bounds_hold(rows: list[BoundRow], scale: float = 1.0) -> tuple[bool, float]:
    """Verdict and worst violation of :func:`garland_upper_bounds` rows."""
    worst = min((r.slack for r in rows), default=0.0)
    return worst >= -SLACK_TOL * (1.0 + scale), max(0.0, -worst)


@dataclass(frozen=True)
class ClassicalGarland:
    lhs: float
    rhs: float
    min_link_gap: float
    threshold: Fraction
    vanishing_predicted: bool
    betti: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs - SLACK_TOL * (1 + abs(self.rhs))


def classical_garland(X: SimplicialComplex, k: int, l: int) -> ClassicalGarland:
    """The ``i = 1`` statement for a pure complex with cofacet weights.

    Vanishing is predicted only when every link gap exceeds the threshold
    ``(l+1)(d-k)/(k+1)`` by more than the counting tolerance.
    """
    _check_pair(X, k, l)
    d = X.dim
    if not X.is_pure(d):
        raise ComplexError("classical Garland bound needs a pure complex")
    w = pure_cofacet_weight(X, d)
    gaps = [s.smallest(1) for s in link_spectra(X, w, k, l).values()]
    min_gap = min(gaps)
    lam1 = eigenvalues_symmetric(laplacian(X, w, k, "total").entries).smallest(1)
    thr = Fraction((l + 1) * (d - k), k + 1)
    return ClassicalGarland(
        lhs=(k - l) * lam1,
        rhs=(k + 1) * min_gap - (l + 1) * (d - k),
        min_link_gap=min_gap,
        threshold=thr,
        vanishing_predicted=min_gap > float(thr) + threshold_tol(d - k),
        betti=homology_dimension(X, k).betti,
    )


def unweighted_garland(X: SimplicialComplex, k: int, l: int,
                       tol: float | None = None) -> GarlandReport:
    return garland_lower_bounds(X, "unit", k, l, tol)


def pure_garland(X: SimplicialComplex, k: int, l: int,
                 tol: float | None = None) -> GarlandReport:
    """Cofacet-weighted bounds; here ``Delta_k`` is exactly ``d - k``."""
    report = garland_lower_bounds(X, "pure", k, l, tol)
    assert report.delta == X.dim - k
    return report
