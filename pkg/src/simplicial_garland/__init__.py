"""Weighted simplicial Laplacians, exact homology and Garland-type spectral bounds."""

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    build_complex,
    faces_of_dim,
    full_simplex,
    incidence_sign,
    is_pure,
    link,
    neighbors,
    simplex_boundary,
    skeleton_of_simplex,
)
from .garland import (
    GarlandReport,
    classical_garland,
    garland_lower_bounds,
    garland_upper_bounds,
    homology_upper_bound,
    link_spectra_direct_sum,
    pure_garland,
    unweighted_garland,
)
from .laplacian import (
    LaplacianMatrix,
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
from .spectral import (
    BettiResult,
    Spectrum,
    count_at_most,
    eigenvalues_symmetric,
    exact_rank,
    homology_dimension,
    numeric_kernel_dim,
    spectrum_direct_sum,
)

__version__ = "0.1.0"
