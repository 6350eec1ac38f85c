"""Symmetric identities of sums of two PI-algebras over prime fields."""

from .algebra import (
    Algebra,
    AlgebraError,
    DecompositionError,
    Subspace,
    SumDecomposition,
    check_sum_decomposition,
    codimension,
    full_space,
    is_associative,
    multiply,
    nilpotency_index,
    product_power,
    span,
    subspace_contains,
    subspace_product,
    subspace_sum,
    zero_space,
)
from .multilinear import (
    BudgetExceeded,
    IdentityReport,
    MultilinearPoly,
    check_identity,
    check_symmetric,
    commutator_product_poly,
    commutator_square_poly,
    eval_poly,
    eval_symmetric,
    min_symmetric_degree,
    sym_poly,
)

__version__ = "0.1.0"
