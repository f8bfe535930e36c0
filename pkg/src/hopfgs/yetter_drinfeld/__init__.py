from .constructions import (
    cofree_yd,
    coad_power,
    extend_to_free,
    free_map,
    free_yd,
    restrict_to_generators,
    trivial_yd,
    twist_bimodule,
)
from .modules import (
    Bimodule,
    Comodule,
    RightModule,
    YDModule,
    check_action_associative,
    check_bimodule,
    check_comodule,
    check_yd,
)
from .sigma import (
    SigmaSection,
    Splitting,
    ad_r,
    adjoint_restriction_check,
    chi_coinvariant_check,
    chi_element,
    dual_fundamental_comodule,
    end_comodule,
    fundamental_comodule,
    sigma_section,
    trivial_comodule,
)

__all__ = [
    "Bimodule",
    "Comodule",
    "RightModule",
    "SigmaSection",
    "Splitting",
    "YDModule",
    "ad_r",
    "adjoint_restriction_check",
    "check_action_associative",
    "check_bimodule",
    "check_comodule",
    "check_yd",
    "chi_coinvariant_check",
    "chi_element",
    "coad_power",
    "cofree_yd",
    "dual_fundamental_comodule",
    "end_comodule",
    "extend_to_free",
    "free_map",
    "free_yd",
    "fundamental_comodule",
    "restrict_to_generators",
    "sigma_section",
    "trivial_comodule",
    "trivial_yd",
    "twist_bimodule",
]
