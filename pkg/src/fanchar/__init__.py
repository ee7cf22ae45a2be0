"""Permutation characters of cyclic groups acting on complete simplicial fans.

The graded character of a proper cyclic action on the cohomology of the
toric variety of a complete simplicial fan is computed from fixed
subcomplexes and characteristic polynomials, then split into transitive
permutation characters by Möbius inversion over the subgroup lattice.
"""
from .action import FixedData, GroupAction, fixed_subcomplex, restrict_to_fixed, validate_action
from .character import (
    character_data,
    cross_check_quotient,
    decompose,
    decompose_graded,
    graded_character,
    prime_power_check,
    q_polynomial,
    ungraded_character,
)
from .exactalg import CyclotomicFactorization, IntMatrix, IntPolynomial, cyclotomic
from .fan import Fan, SimplicialComplex, complex_from_fan, f_vector, h_polynomial, validate_fan

__version__ = "0.1.0"

__all__ = [
    "CyclotomicFactorization",
    "Fan",
    "FixedData",
    "GroupAction",
    "IntMatrix",
    "IntPolynomial",
    "SimplicialComplex",
    "character_data",
    "complex_from_fan",
    "cross_check_quotient",
    "cyclotomic",
    "decompose",
    "decompose_graded",
    "f_vector",
    "fixed_subcomplex",
    "graded_character",
    "h_polynomial",
    "prime_power_check",
    "q_polynomial",
    "restrict_to_fixed",
    "ungraded_character",
    "validate_action",
    "validate_fan",
]
