from .complex import CochainComplex, ComplexError, first_nonzero_composition, homology_dims
from .matrix import KernelBasis, SparseMatrix, bareiss_rank, kernel, kernel_basis, rank, solve_kernel
from .scalars import (
    RationalFunction,
    Scalar,
    ScalarParseError,
    format_scalar,
    is_symbolic,
    parse_scalar,
    simplify,
    specialize,
)

__all__ = [
    "CochainComplex",
    "ComplexError",
    "KernelBasis",
    "RationalFunction",
    "Scalar",
    "ScalarParseError",
    "SparseMatrix",
    "bareiss_rank",
    "first_nonzero_composition",
    "format_scalar",
    "homology_dims",
    "is_symbolic",
    "kernel",
    "kernel_basis",
    "parse_scalar",
    "rank",
    "simplify",
    "solve_kernel",
    "specialize",
]
