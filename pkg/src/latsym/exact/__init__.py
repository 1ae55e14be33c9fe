"""Exact arithmetic foundation: rationals, λ-polynomials, rational functions
and matrices over them."""
from fractions import Fraction

from .charpoly import CharpolyAdjugate, charpoly_and_adjugate, charpoly_by_interpolation
from .matrix import (
    ExactMatrix,
    Hamiltonian,
    as_exact,
    as_hamiltonian,
    det_exact,
    poly_det,
    solve_exact,
)
from .poly import (
    Poly,
    count_roots_at_least,
    exact_multiplicity_structure,
    poly_gcd,
    poly_lcm,
    roots_with_multiplicity,
)
from .ratfunc import RationalFunction, as_ratfunc

__all__ = [
    "CharpolyAdjugate",
    "ExactMatrix",
    "Fraction",
    "Hamiltonian",
    "Poly",
    "RationalFunction",
    "as_exact",
    "as_hamiltonian",
    "as_ratfunc",
    "charpoly_and_adjugate",
    "charpoly_by_interpolation",
    "count_roots_at_least",
    "det_exact",
    "exact_multiplicity_structure",
    "poly_det",
    "poly_gcd",
    "poly_lcm",
    "roots_with_multiplicity",
    "solve_exact",
]
