from .base import DegreeOverflowError, Element, HopfAlgebra
from .checks import check_hopf_axioms, check_kac, kac_witnesses
from .finite import (
    BUILTIN_GROUPS,
    FiniteGroup,
    FiniteHopfAlgebra,
    GroupTableError,
    cyclic_group,
    function_algebra,
    group_algebra,
    load_group,
    symmetric_group,
)
from .pbw import (
    CocentralProjection,
    CompletionBudgetError,
    EvenSubalgebra,
    PBWAlgebra,
    RewriteError,
    RewriteSystem,
    derive_be_relations,
    e_q,
)
from .presentations import presentation_check_As_Ah

__all__ = [
    "BUILTIN_GROUPS",
    "CocentralProjection",
    "CompletionBudgetError",
    "DegreeOverflowError",
    "Element",
    "EvenSubalgebra",
    "FiniteGroup",
    "FiniteHopfAlgebra",
    "GroupTableError",
    "HopfAlgebra",
    "PBWAlgebra",
    "RewriteError",
    "RewriteSystem",
    "check_hopf_axioms",
    "check_kac",
    "cyclic_group",
    "derive_be_relations",
    "e_q",
    "function_algebra",
    "group_algebra",
    "kac_witnesses",
    "load_group",
    "presentation_check_As_Ah",
    "symmetric_group",
]
