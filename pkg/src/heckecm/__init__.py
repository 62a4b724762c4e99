"""Closed-form L-values of the CM curves y^2 = x^3 + D^3 over Q(sqrt(-3))."""
from .eisenstein import (
    EisensteinInt,
    SquarefreeD,
    SubsetSelector,
    find_primes,
    gcd,
    power_residue_symbol,
    residue_system,
)
from .hecke import (
    HeckeCharacterSpec,
    LValueReport,
    euler_adjust,
    formula_l1,
    identity_checks,
    psi_of_generator,
    symbol_checks,
)
from .numerics import deterministic_sum, numerics
from .oracle import count_points, oracle_l1, psi_from_point_counts
from .valuation import DyadicValue, certificate, subset_symbol_sums, v2_monomial
from .weierstrass import LatticePoint, compute_omega, e1_star, lattice_context, wp, zeta

__all__ = [
    "DyadicValue", "EisensteinInt", "HeckeCharacterSpec", "LValueReport", "LatticePoint",
    "SquarefreeD", "SubsetSelector", "certificate", "compute_omega", "count_points",
    "deterministic_sum", "e1_star", "euler_adjust", "find_primes", "formula_l1", "gcd",
    "identity_checks", "lattice_context", "numerics", "oracle_l1", "power_residue_symbol",
    "psi_from_point_counts", "psi_of_generator", "residue_system", "subset_symbol_sums",
    "symbol_checks", "v2_monomial", "wp", "zeta",
]
