"""Isospectral reductions, latent permutation symmetries and the spectral
degeneracies they force, computed exactly over the rationals."""

__version__ = "0.1.0"

from .errors import InputError, LatsymError, NumericalQualityError, PoleError, PreconditionError
from .exact import ExactMatrix, Fraction, Hamiltonian, Poly, RationalFunction
from .reduction import (
    ReducedMatrix,
    evaluate,
    isospectral_reduce,
    neumann_truncation,
    nonlinear_spectrum,
    reduce_via_charpoly,
)
from .symmetry import (
    circulant_canonicalize,
    cyclic_orbit_sets,
    global_automorphisms,
    latent_permutation_group,
    local_power_commute,
    symbolic_commute,
    walk_profile,
    walk_singlet_check,
)
from .degeneracy import analyze_degeneracy, degeneracy_bounds, irrep_multiplicities, verify_report
from .ges import Tolerances, build_ges, cospectral_partition, eisenberg_basis, noncommuting_ges_pair
from .multiplets import ExtensionPlan, extend_with_site, find_multiplets, is_multiplet, verify_extension

__all__ = [
    "ExactMatrix",
    "ExtensionPlan",
    "Fraction",
    "Hamiltonian",
    "InputError",
    "LatsymError",
    "NumericalQualityError",
    "PoleError",
    "Poly",
    "PreconditionError",
    "RationalFunction",
    "ReducedMatrix",
    "Tolerances",
    "analyze_degeneracy",
    "build_ges",
    "circulant_canonicalize",
    "cospectral_partition",
    "cyclic_orbit_sets",
    "degeneracy_bounds",
    "eisenberg_basis",
    "evaluate",
    "extend_with_site",
    "find_multiplets",
    "global_automorphisms",
    "irrep_multiplicities",
    "is_multiplet",
    "isospectral_reduce",
    "latent_permutation_group",
    "local_power_commute",
    "neumann_truncation",
    "noncommuting_ges_pair",
    "nonlinear_spectrum",
    "reduce_via_charpoly",
    "symbolic_commute",
    "verify_extension",
    "verify_report",
    "walk_profile",
    "walk_singlet_check",
]
