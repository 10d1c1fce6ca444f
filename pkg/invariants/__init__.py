"""深さ・次元・Betti 数・Bass 数・型・不足加群と述語群を提供するパッケージ。"""

from .calculator import DeficiencyFamily, InvariantCalculator, residue_field, ring_module
from .hom import HomTarget, hom_homology
from .predicates import (
    FinitenessResult,
    ModuleFlags,
    id_finite,
    is_canonically_cm,
    is_cohen_macaulay,
    is_complete_intersection,
    is_equidimensional,
    is_generalized_cm,
    minimal_ideal_generators,
    pd_finite,
    predicates,
    serre_bound,
    serre_level,
)
from .profile import ModuleProfile, module_profile

__all__ = [
    "DeficiencyFamily",
    "FinitenessResult",
    "HomTarget",
    "InvariantCalculator",
    "ModuleFlags",
    "ModuleProfile",
    "hom_homology",
    "id_finite",
    "is_canonically_cm",
    "is_cohen_macaulay",
    "is_complete_intersection",
    "is_equidimensional",
    "is_generalized_cm",
    "minimal_ideal_generators",
    "module_profile",
    "pd_finite",
    "predicates",
    "residue_field",
    "ring_module",
    "serre_bound",
    "serre_level",
]
