"""Cochain complexes: Gerstenhaber-Schack, Hochschild, averaging and the quantum SL(2) resolution."""

from .gs import (
    Averaging,
    BarCochains,
    BudgetExceededError,
    BuiltComplex,
    HomSpace,
    algebra_integral,
    averaging,
    averaging_check,
    colinear_space,
    column_budget,
    contracting_homotopy_check,
    gs_complex,
    gs_equals_hochschild_check,
    hochschild_complex,
    is_colinear,
    random_bimodule,
)
from .resolution import (
    Reconstruction,
    ResolutionComplex,
    ResolutionMaps,
    coinvariant_functionals,
    d_squared_check,
    homology_agreement,
    make_algebra,
    normalized_functional,
    reconstruction_check,
    resolution_complex_psl2,
    resolution_complex_sl2,
)

__all__ = [
    "Averaging",
    "BarCochains",
    "BudgetExceededError",
    "BuiltComplex",
    "HomSpace",
    "Reconstruction",
    "ResolutionComplex",
    "ResolutionMaps",
    "algebra_integral",
    "averaging",
    "averaging_check",
    "coinvariant_functionals",
    "colinear_space",
    "column_budget",
    "contracting_homotopy_check",
    "d_squared_check",
    "gs_complex",
    "gs_equals_hochschild_check",
    "hochschild_complex",
    "homology_agreement",
    "is_colinear",
    "make_algebra",
    "normalized_functional",
    "random_bimodule",
    "reconstruction_check",
    "resolution_complex_psl2",
    "resolution_complex_sl2",
]
