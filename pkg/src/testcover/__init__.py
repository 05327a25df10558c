"""Minimum test cover: exact solvers, bounds, generators and parameterized algorithms."""

from .bounds import degree_profile_check, lower_bound_log, lower_bound_r
from .errors import BudgetExceeded, InvariantViolation, ParseError
from .fpt_mk import solve_mk
from .hypergraph import Hypergraph, is_test_cover, separates
from .kernel_mk import SubsetInstance, kernelize_mk
from .kernel_nk import kernelize_nk, solve_nk
from .oracle import brute_force_min, exact_min, greedy_cover, has_cover_of_size

__all__ = [
    "BudgetExceeded",
    "Hypergraph",
    "InvariantViolation",
    "ParseError",
    "SubsetInstance",
    "brute_force_min",
    "degree_profile_check",
    "exact_min",
    "greedy_cover",
    "has_cover_of_size",
    "is_test_cover",
    "kernelize_mk",
    "kernelize_nk",
    "lower_bound_log",
    "lower_bound_r",
    "separates",
    "solve_mk",
    "solve_nk",
]
__version__ = "0.1.0"
