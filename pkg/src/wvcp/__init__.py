"""Weighted vertex coloring: tree search, greedy completions and local search."""

from .coloring import PartialSolution, coloring_score, empty_solution, is_legal, legal_moves
from .instance import WeightedGraph, from_edges, read_instance, reduce
from .mcts import SearchTree, SelectionParams, run
from .records import RunRecord, StopCondition

__version__ = "0.1.0"

__all__ = [
    "PartialSolution", "coloring_score", "empty_solution", "is_legal", "legal_moves", "WeightedGraph",
    "from_edges", "read_instance", "reduce", "SearchTree", "SelectionParams", "run", "RunRecord",
    "StopCondition",
]
