"""Solvers whose comparative statics are governed by the 2-concave order."""

from .game import SearchGame, compare_beliefs, diamond_equilibrium, match_factor
from .hermite_hadamard import GAMMA_MIN, T_MIN, check_uniform_pair_expectation_bridge, hh_bounds_check
from .protection import ProtectionProblem, self_protection_verdict
from .savings import SavingsProblem, compare_savings, grid_savings, objective, solve_savings

__all__ = [
    "GAMMA_MIN",
    "ProtectionProblem",
    "SavingsProblem",
    "SearchGame",
    "T_MIN",
    "check_uniform_pair_expectation_bridge",
    "compare_beliefs",
    "compare_savings",
    "diamond_equilibrium",
    "grid_savings",
    "hh_bounds_check",
    "match_factor",
    "objective",
    "self_protection_verdict",
    "solve_savings",
]
