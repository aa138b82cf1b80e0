from ..records import RunRecord, StopCondition
from .oracle import brute_force_optimum, partition_optimum
from .solvers import METHODS, derive_rng, solve
from .stats import ComparisonCell, compare, significance_matrix
from .verify import VerificationError, verify_solution

__all__ = [
    "RunRecord", "StopCondition", "brute_force_optimum", "partition_optimum", "METHODS", "derive_rng",
    "solve", "ComparisonCell", "compare", "significance_matrix", "VerificationError", "verify_solution",
]
