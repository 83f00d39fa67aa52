"""Finite-field enumeration used to check the combinatorics by brute force."""

from .bruhat import bruhat_cell_of, opposite_bruhat_cell_of, opposite_schubert_cell_of, perm_matrix
from .checks import (
    Report, cell_oracle, stabiliser_descriptor, verify_cell_equivalence,
    verify_descriptors, verify_example1, verify_example2, verify_kls, verify_partition,
)
from .field import MAX_LOG2_POINTS, SUPPORTED_PRIMES, GuardError, PrimeField
from .polyfit import CountPolynomial, fit_count_polynomial
from .space import (
    PointSet, ProjPoint, bxb_orbit, enumerate_proj_matrices, gxg_orbit, matrix_space,
    variety_points,
)

__all__ = [
    "GuardError", "PrimeField", "SUPPORTED_PRIMES", "MAX_LOG2_POINTS",
    "ProjPoint", "PointSet", "enumerate_proj_matrices", "matrix_space", "variety_points",
    "bxb_orbit", "gxg_orbit", "bruhat_cell_of", "opposite_schubert_cell_of",
    "opposite_bruhat_cell_of", "perm_matrix", "CountPolynomial", "fit_count_polynomial",
    "Report", "verify_example1", "verify_example2", "verify_kls", "verify_cell_equivalence",
    "verify_partition", "verify_descriptors", "stabiliser_descriptor", "cell_oracle",
]
