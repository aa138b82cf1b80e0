from __future__ import annotations

import numpy as np

from .. import _kernels
from .base import LocalSearch, Tracker, tenure
from .state import LsSolution


class Afisa(LocalSearch):
    """Tabu search over legal and conflicting one-moves.

    Moves minimize ``score + phi * conflicts``. ``phi`` doubles on every
    iteration once conflicts have persisted ``phi_streak`` iterations, and drops
    by one after ``phi_streak`` consecutive legal iterations (floor 1), so the
    search oscillates around the legal boundary.
    """

    name = "afisa"

    def __init__(self, params=None, phi_fixed: int | None = None):
        super().__init__(params)
        self.phi_fixed = phi_fixed

    def improve(self, g, color, budget, rng, target=None, trace=False):
        s = LsSolution(g, color)
        tracker = Tracker(s, trace, self.on_improve)
        n = g.n
        p = self.params
        phi_cap = int(g.weight.sum()) + 1
        phi = self.phi_fixed if self.phi_fixed is not None else p.phi_init
        tabu = np.zeros((n, max(n, 1)), dtype=np.int64)
        verts = np.arange(n, dtype=np.int64)
        self.phi_log = [] if trace else None
        conflict_streak = legal_streak = 0
        it = 0
        while (target is None or tracker.best_score > target) and budget.step():
            v, c, _obj, _ds, n_cand = _kernels.scan_moves(
                s.weight, s.color, s.gamma, s.gmax, s.gcnt, s.gsecond, s.active_colors(),
                tabu, it, s.score, tracker.best_score, s.conflicts, phi, False, verts,
                rng.random(),
            )
            if n_cand == 0:
                break
            if v >= 0:
                old = int(s.color[v])
                s.move(v, c)
                tabu[v, old] = it + tenure(p, n_cand, rng)
                tracker.observe(s)
            it += 1
            if self.phi_fixed is not None:
                continue
            if s.conflicts > 0:
                conflict_streak += 1
                legal_streak = 0
                if conflict_streak >= p.phi_streak:
                    phi = min(phi * 2, phi_cap)
            else:
                legal_streak += 1
                conflict_streak = 0
                if legal_streak >= p.phi_streak:
                    phi = max(1, phi - 1)
                    legal_streak = 0
            if self.phi_log is not None:
                self.phi_log.append(phi)
        return tracker.result(it)


def afisa_like(g, color, budget, rng, params=None, target=None, trace=False):
    return Afisa(params).improve(g, color, budget, rng, target=target, trace=trace)
