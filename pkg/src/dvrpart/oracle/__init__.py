"""Independent verification by explicit rings and Smith form over Z/p^K."""

from .checks import (
    abelian_invariants_oracle,
    default_precision,
    lcs_logorders,
    module_relations,
    power_subgroup_check,
)
from .localmatrix import LocalMatrix, local_snf, span_logorder, valuation
from .rings import (
    EisensteinRing,
    build_ring,
    cached_ring,
    check_eisenstein,
    cyclotomic_eisenstein,
    find_irreducible,
    is_irreducible_mod_p,
)

__all__ = [
    "EisensteinRing",
    "LocalMatrix",
    "abelian_invariants_oracle",
    "build_ring",
    "cached_ring",
    "check_eisenstein",
    "cyclotomic_eisenstein",
    "default_precision",
    "find_irreducible",
    "is_irreducible_mod_p",
    "lcs_logorders",
    "local_snf",
    "module_relations",
    "power_subgroup_check",
    "span_logorder",
    "valuation",
]
