"""Singular points of Spec(R(G) (x) Z[xi]) for finite groups G.

R(G) is the ring of virtual characters and xi a primitive |G|-th root of
unity.  The package computes character tables (Burnside-Dixon), the
multiplication-table presentation of R(G), and the tangent-space invariants
of every closed point of the resulting scheme.
"""

from .chartable import (
    CharacterTable,
    dixon_character_table,
    embed_conductor,
    load_table,
    save_table,
    table_from_json,
    table_to_json,
    verify_table,
)
from .cyclotomic import (
    CyclotomicInt,
    CyclotomicPrime,
    cyclotomic_polynomial,
    is_ramified,
    phi_derivative_at,
    primes_above,
    reduce_mod,
)
from .greenring import GreenRing, relations, structure_constants
from .groups import PermGroup, Permutation, fusion_map, make_group, p_regular_part
from .singular import (
    PointDescriptor,
    PointReport,
    abelian_tangent_dim,
    analyze,
    analyze_point,
    crossing_report,
    enumerate_points,
    extended_jacobian,
    jacobian,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTable",
    "CyclotomicInt",
    "CyclotomicPrime",
    "GreenRing",
    "PermGroup",
    "Permutation",
    "PointDescriptor",
    "PointReport",
    "abelian_tangent_dim",
    "analyze",
    "analyze_point",
    "crossing_report",
    "cyclotomic_polynomial",
    "dixon_character_table",
    "embed_conductor",
    "enumerate_points",
    "extended_jacobian",
    "fusion_map",
    "is_ramified",
    "jacobian",
    "load_table",
    "make_group",
    "p_regular_part",
    "phi_derivative_at",
    "primes_above",
    "reduce_mod",
    "relations",
    "save_table",
    "structure_constants",
    "table_from_json",
    "table_to_json",
    "verify_table",
]
