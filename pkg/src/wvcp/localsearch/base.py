from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import _kernels
from .state import LsSolution


@dataclass
class LsParams:
    """Tunables shared by the improvers (bench config section ``[ls]``)."""

    tenure_base: int = 10
    tenure_divisor: int = 10
    # adaptive conflict weight
    phi_init: int = 1
    phi_streak: int = 5
    # redls
    penalty_base: int = 1
    repair_steps_factor: int = 10
    # ilsts
    reinsert_steps_factor: int = 10
    max_perturb_groups: int = 3


@dataclass
class LsResult:
    color: np.ndarray
    score: int
    iterations: int = 0
    # (score, legal) per visited state when tracing is on
    trace: list = field(default_factory=list)


class Tracker:
    """Best legal state bookkeeping plus optional per-state trace."""

    def __init__(self, s: LsSolution, trace: bool = False, on_improve=None):
        self.on_improve = on_improve
        self.best_score = s.score
        self.best_color = s.color.copy()
        self.trace = [] if trace else None
        self.observe(s)

    def observe(self, s: LsSolution) -> bool:
        legal = s.conflicts == 0 and s.complete
        if self.trace is not None:
            self.trace.append((s.score, legal))
        if legal and s.score < self.best_score:
            self.best_score = s.score
            self.best_color = s.color.copy()
            if self.on_improve is not None:
                self.on_improve(self.best_score)
            return True
        return False

    def result(self, iterations: int) -> LsResult:
        return LsResult(self.best_color.copy(), int(self.best_score), iterations, self.trace or [])


def tenure(params: LsParams, n_candidates: int, rng) -> int:
    return params.tenure_base + int(rng.integers(0, n_candidates // params.tenure_divisor + 1))


def legal_descent(s: LsSolution, rng, tracker: Tracker | None = None, budget=None) -> int:
    """Apply strictly improving legal one-moves until none is left."""
    n = s.g.n
    no_tabu = np.zeros((n, max(n, 1)), dtype=np.int64)
    verts = np.arange(n, dtype=np.int64)
    moves = 0
    while True:
        if budget is not None and not budget.step():
            break
        v, c, _obj, ds, _ = _kernels.scan_moves(
            s.weight, s.color, s.gamma, s.gmax, s.gcnt, s.gsecond, s.active_colors(),
            no_tabu, 0, s.score, s.score, 0, 0, True, verts, rng.random(),
        )
        if v < 0 or ds >= 0:
            break
        s.move(v, c)
        moves += 1
        if tracker is not None:
            tracker.observe(s)
    return moves


class LocalSearch:
    """Improver contract: legal complete coloring in, best legal coloring seen out."""

    name = "identity"
    # called with each new best legal score; the harness uses it for time series
    on_improve = None

    def __init__(self, params: LsParams | None = None):
        self.params = params or LsParams()

    def improve(self, g, color, budget, rng, target: int | None = None, trace: bool = False) -> LsResult:
        s = LsSolution(g, color)
        return Tracker(s, trace, self.on_improve).result(0)
