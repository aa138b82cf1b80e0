"""Rollout policies that complete a partial coloring."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .clock import Budget
from .coloring import PartialSolution
from .localsearch import LocalSearch, LocalSearchError, check_result

LS_TIME_FACTOR = 0.02  # seconds of local search per vertex


def _complete_arrays(s: PartialSolution, mode: int, rng=None):
    g = s.g
    color = s.color.copy()
    gmax = s.group_max.copy()
    remaining = g.n - s.pos
    draws = rng.random(remaining) if (rng is not None and mode != _kernels.GREEDY) else np.zeros(remaining)
    k, score = _kernels.complete(g.indptr, g.indices, g.weight, g.order, color, gmax,
                                 s.k, s.pos, s.score, mode, draws)
    return color, gmax, k, score


def _as_solution(s: PartialSolution, color, gmax, k, score) -> PartialSolution:
    out = s.copy()
    out.color = color
    out.group_max = gmax
    out.k = k
    out.score = score
    out._trail.extend([False] * (s.g.n - s.pos))  # trail is not replayable past pos
    out.pos = s.g.n
    return out


def simulate_random(s: PartialSolution, rng) -> PartialSolution:
    """Uniform choice among all legal moves, new group included."""
    return _as_solution(s, *_complete_arrays(s, _kernels.RANDOM, rng))


def simulate_greedy_random(s: PartialSolution, rng) -> PartialSolution:
    """Uniform choice among existing free groups; a group opens only when forced."""
    return _as_solution(s, *_complete_arrays(s, _kernels.GREEDY_RANDOM, rng))


def simulate_greedy(s: PartialSolution) -> PartialSolution:
    """First-fit in color index order."""
    return _as_solution(s, *_complete_arrays(s, _kernels.GREEDY))


def simulate_with_ls(s: PartialSolution, improver: LocalSearch, rng, budget_seconds: float | None = None,
                     clock=None, max_iterations: int | None = None, target: int | None = None,
                     pre_greedy: str = "greedy"):
    """Greedy completion followed by ``improver``; returns (color, score).

    The default budget is ``LS_TIME_FACTOR * n`` seconds. No vertex is frozen:
    the improver may recolor the prefix fixed by the tree.
    """
    g = s.g
    if pre_greedy == "greedy":
        color, _, _, start_score = _complete_arrays(s, _kernels.GREEDY)
    elif pre_greedy == "greedy-random":
        color, _, _, start_score = _complete_arrays(s, _kernels.GREEDY_RANDOM, rng)
    else:
        raise ValueError(f"unknown pre-local-search completion {pre_greedy!r}")
    if budget_seconds is None and max_iterations is None:
        budget_seconds = LS_TIME_FACTOR * g.n
    budget = Budget(budget_seconds, max_iterations, clock)
    res = improver.improve(g, color, budget, rng, target=target)
    if res.score > start_score:
        raise LocalSearchError("improver returned a worse solution than its input")
    score = check_result(g, res.color, start_score)
    if score != res.score:
        raise LocalSearchError(f"improver reported score {res.score}, actual {score}")
    return res.color, score


class SimulationStrategy:
    """Per-run completion policy; owns its random stream."""

    RANDOM = "random"
    GREEDY_RANDOM = "greedy-random"
    GREEDY = "greedy"
    LS = "ls"

    def __init__(self, kind: str, rng=None, improver: LocalSearch | None = None,
                 ls_time_factor: float = LS_TIME_FACTOR, ls_iterations: int | None = None,
                 pre_greedy: str = "greedy"):
        if kind not in (self.RANDOM, self.GREEDY_RANDOM, self.GREEDY, self.LS):
            raise ValueError(f"unknown simulation kind {kind!r}")
        if kind == self.LS and improver is None:
            raise ValueError("LS simulation needs an improver")
        self.kind = kind
        self.rng = rng if rng is not None else np.random.default_rng()
        self.improver = improver
        self.ls_time_factor = ls_time_factor
        self.ls_iterations = ls_iterations
        self.pre_greedy = pre_greedy

    @property
    def name(self) -> str:
        return self.improver.name if self.kind == self.LS else self.kind

    def __call__(self, s: PartialSolution, clock=None, target: int | None = None):
        """Complete ``s``; returns (color array, score)."""
        if self.kind == self.GREEDY:
            color, _, _, score = _complete_arrays(s, _kernels.GREEDY)
        elif self.kind == self.GREEDY_RANDOM:
            color, _, _, score = _complete_arrays(s, _kernels.GREEDY_RANDOM, self.rng)
        elif self.kind == self.RANDOM:
            color, _, _, score = _complete_arrays(s, _kernels.RANDOM, self.rng)
        else:
            seconds = None if self.ls_iterations is not None else self.ls_time_factor * s.g.n
            color, score = simulate_with_ls(s, self.improver, self.rng, seconds, clock,
                                            self.ls_iterations, target, self.pre_greedy)
        return color, int(score)
