from __future__ import annotations

import numpy as np

from .. import _kernels
from .base import LocalSearch, Tracker, tenure
from .state import LocalSearchError, LsSolution


class TabuWeight(LocalSearch):
    """TabuCol-style search restricted to legal one-moves.

    Each iteration applies the best non-tabu legal recoloring (ties at random);
    the reverse move stays tabu for ``tt`` iterations unless it would beat the
    best score (aspiration).
    """

    name = "tw"

    def improve(self, g, color, budget, rng, target=None, trace=False):
        s = LsSolution(g, color)
        if not s.legal:
            raise LocalSearchError("tabu weight needs a legal start")
        tracker = Tracker(s, trace, self.on_improve)
        n = g.n
        tabu = np.zeros((n, max(n, 1)), dtype=np.int64)
        verts = np.arange(n, dtype=np.int64)
        self.tabu_log = [] if trace else None
        it = 0
        while (target is None or tracker.best_score > target) and budget.step():
            v, c, _obj, ds, n_cand = _kernels.scan_moves(
                s.weight, s.color, s.gamma, s.gmax, s.gcnt, s.gsecond, s.active_colors(),
                tabu, it, s.score, tracker.best_score, 0, 0, True, verts, rng.random(),
            )
            if n_cand == 0:
                break
            if v >= 0:
                old = int(s.color[v])
                if self.tabu_log is not None:
                    self.tabu_log.append((it, v, c, bool(tabu[v, c] > it), s.score + ds < tracker.best_score))
                s.move(v, c)
                tabu[v, old] = it + tenure(self.params, n_cand, rng)
                tracker.observe(s)
            it += 1
        return tracker.result(it)


def tabu_weight(g, color, budget, rng, params=None, target=None, trace=False):
    return TabuWeight(params).improve(g, color, budget, rng, target=target, trace=trace)
