"""Skew left braces and trifactorised groups at desk scale.

Groups are finite, realised on ``0..n-1`` with identity ``0``; every object is
certified when built.  Start from :mod:`trifact.named` for standard groups,
:func:`enumerate_braces` for braces and :func:`large_trifact` /
:func:`small_trifact` / :func:`generalised_trifact` for the associated tuples.
"""
from .braces import (
    BraceMap,
    SkewBrace,
    Substructure,
    brace_automorphisms,
    brace_quotient,
    classify_substructure,
    enumerate_braces,
    is_brace_hom,
    ker_lambda,
    lambda_map,
    opposite_brace,
    restrict_brace,
    subbraces,
    trivial_brace,
    validate_brace,
)
from .classify import Kind, aut_orbits, identify_kind, iso_classes, omega
from .config import BOUNDS, Bounds, set_bounds
from .errors import TrifactError, ValidationError
from .groups import FiniteGroup, GroupMap, SubgroupSet, semidirect_product, validate_group
from .quotients import (
    ideal_quotient_tuple,
    quotient_admissible,
    quotient_by_E_normal,
    quotient_chain,
    quotient_trifact,
    small_not_preserved_check,
    sql_chain,
)
from .substructure import (
    classify_substructure_trifact,
    is_trifact_subgroup,
    pi_E_of_preimage,
    sigma_image,
    sigma_preimage,
    subbrace_bijection,
    subbrace_trifact,
)
from .trifact import (
    TrifactorisedGroup,
    associated_brace,
    derivation,
    generalised_trifact,
    is_trifact_morphism,
    large_trifact,
    lift_brace_hom,
    recover_eta,
    small_trifact,
    tuple_epimorphism,
    validate_trifact,
)

__version__ = "0.1.0"
