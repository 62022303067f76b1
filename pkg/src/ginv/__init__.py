"""Generalized inverses over exact Gaussian rationals with a float64 fallback.

The central object is the Bott-Duffin Drazin inverse ``P_L (A P_L + P_{L^perp})^D``
of a square matrix ``A`` constrained to a subspace ``L``; the package also
provides Moore-Penrose, Drazin, Bott-Duffin and outer inverses, projectors,
constrained solvers and randomized verification suites.
"""

from .bdd import (
    BddContext,
    bdd_all_representations,
    bdd_inverse,
    bott_duffin,
    build_context,
    characterize,
    index_equivalences,
    projector_mp_representations,
    rank_equation_representation,
    restriction_representation,
    submatrix_representation,
)
from .errors import (
    GinvError,
    InconsistentSystemError,
    NonComplementaryError,
    NonexistenceError,
    RankAmbiguityError,
    SingularMatrixError,
)
from .geninv import drazin, index, moore_penrose, outer_inverse_st
from .io import dumps_matrix, loads_matrix, parse_matrix, parse_subspace
from .matrix import DEFAULT_TOL, EXACT, F64, Matrix
from .scalar import GaussianRational
from .solver import (
    PNorm,
    cramer_min_p_norm,
    jordan_basis,
    min_p_norm_certify,
    solve_constrained,
    solve_restricted,
)
from .subspace import Subspace, column_space, null_space, oblique_projector, orthogonal_projector

__version__ = "0.1.0"

__all__ = [
    "BddContext", "bdd_all_representations", "bdd_inverse", "bott_duffin", "build_context",
    "characterize", "index_equivalences", "projector_mp_representations",
    "rank_equation_representation", "restriction_representation", "submatrix_representation",
    "GinvError", "InconsistentSystemError", "NonComplementaryError", "NonexistenceError",
    "RankAmbiguityError", "SingularMatrixError",
    "drazin", "index", "moore_penrose", "outer_inverse_st",
    "dumps_matrix", "loads_matrix", "parse_matrix", "parse_subspace",
    "DEFAULT_TOL", "EXACT", "F64", "Matrix", "GaussianRational",
    "PNorm", "cramer_min_p_norm", "jordan_basis", "min_p_norm_certify", "solve_constrained",
    "solve_restricted",
    "Subspace", "column_space", "null_space", "oblique_projector", "orthogonal_projector",
]
