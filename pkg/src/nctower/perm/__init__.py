"""Permutation-group engine: elements, groups, homomorphisms, series, quotients."""
from .permutation import Permutation
from .group import PermGroup
from .hom import (
    GroupHom,
    NormalMap,
    check_hom_exhaustively,
    conjugation_normal_map,
    identity_hom,
    image,
    inclusion_hom,
    kernel,
    make_hom,
    trivial_hom,
)
from .subgroups import (
    ENUMERATION_BOUND,
    Quotient,
    SubnormalCertificate,
    center,
    commutator_subgroup,
    derived_series,
    derived_subgroup,
    is_nilpotent,
    is_perfect,
    is_subnormal,
    lower_central_series,
    nilpotency_class,
    nilpotent_residual,
    normal_closure,
    normal_subgroups,
    quotient,
    quotient_data,
    small_generating_set,
    subgroup_generated,
    successive_normal_closures,
    upper_central_series,
)

__all__ = [name for name in dir() if not name.startswith("_")]
