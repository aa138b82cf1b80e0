from __future__ import annotations

import numpy as np

from .base import LocalSearch, Tracker, legal_descent
from .state import LsSolution


class EdgePenalties:
    """Per-edge weights for conflict repair; an edge gains +1 each pass it stays in conflict."""

    def __init__(self, s: LsSolution, base: int = 1):
        g = s.g
        n = g.n
        self.g = g
        self.base = base
        self.pen = np.zeros((n, max(n, 1)), dtype=np.int64)
        if g.m:
            u, v = g.edges[:, 0], g.edges[:, 1]
            self.pen[u, v] = base
            self.pen[v, u] = base
        self.rebuild(s.color)

    def rebuild(self, color) -> None:
        g = self.g
        self.wgamma = np.zeros_like(self.pen)
        if g.m:
            u, v = g.edges[:, 0], g.edges[:, 1]
            p = self.pen[u, v]
            np.add.at(self.wgamma, (u, color[v]), p)
            np.add.at(self.wgamma, (v, color[u]), p)

    def on_move(self, v: int, old: int, new: int) -> None:
        nb = self.g.neighbors(v)
        p = self.pen[v, nb]
        self.wgamma[nb, old] -= p
        self.wgamma[nb, new] += p

    def end_pass(self, conflict_edges, color) -> None:
        for u, v in conflict_edges.tolist():
            self.pen[u, v] += 1
            self.pen[v, u] += 1
            self.wgamma[u, color[v]] += 1
            self.wgamma[v, color[u]] += 1

    def penalty(self, u: int, v: int) -> int:
        return int(self.pen[u, v])


class RedLS(LocalSearch):
    """Perturb-and-repair search through conflicting colorings.

    Each round moves all heaviest vertices of one random group into another
    group, then repairs conflicts with one-moves ranked by penalty-weighted
    conflict change and then score change. A vertex may move again only
    after one of its neighbors changed color (configuration checking).
    """

    name = "redls"

    def improve(self, g, color, budget, rng, target=None, trace=False):
        s = LsSolution(g, color)
        tracker = Tracker(s, trace, self.on_improve)
        n = g.n
        p = self.params
        pens = EdgePenalties(s, p.penalty_base)
        cc = np.ones(n, dtype=bool)
        weight_span = 2 * int(g.weight.sum()) + 1
        it = 0
        while (target is None or tracker.best_score > target) and budget.step():
            it += 1
            snapshot = s.copy()
            if not self._perturb(s, pens, cc, rng):
                legal_descent(s, rng, tracker)
                break
            steps = 0
            while s.conflicts and steps < p.repair_steps_factor * n and budget.step():
                v, c = self._repair_move(s, pens, cc, weight_span, rng)
                old = int(s.color[v])
                s.move(v, c)
                pens.on_move(v, old, c)
                cc[v] = False
                cc[g.neighbors(v)] = True
                pens.end_pass(s.conflict_edges(), s.color)
                tracker.observe(s)
                steps += 1
            if s.conflicts == 0:
                legal_descent(s, rng, tracker)
            if s.conflicts or s.score > snapshot.score:
                s = snapshot
                pens.rebuild(s.color)
        return tracker.result(it)

    def _perturb(self, s, pens, cc, rng) -> bool:
        groups = np.flatnonzero(s.gsize > 0)
        if len(groups) < 2:
            return False
        a = int(rng.choice(groups))
        heavy = s.members(a)
        heavy = heavy[s.weight[heavy] == s.gmax[a]]
        others = groups[groups != a]
        added = pens.wgamma[np.ix_(heavy, others)].sum(axis=0)
        dscore = np.maximum(0, s.gmax[a] - s.gmax[others])
        key = added * (2 * int(s.weight.sum()) + 1) + dscore
        ties = np.flatnonzero(key == key.min())
        b = int(others[ties[int(rng.integers(len(ties)))]])
        for v in heavy.tolist():
            s.move(v, b)
            pens.on_move(v, a, b)
            cc[s.g.neighbors(v)] = True
        return True

    def _repair_move(self, s, pens, cc, weight_span, rng):
        conf = s.conflicting_vertices()
        cand = conf[cc[conf]]
        if len(cand) == 0:
            cand = conf
        cols = s.active_colors()
        own = s.color[cand]
        w = s.weight[cand]
        sole = (w >= s.gmax[own]) & (s.gcnt[own] == 1)
        out = np.where(sole, s.gsecond[own] - w, 0)
        ds = out[:, None] + np.maximum(0, w[:, None] - s.gmax[cols][None, :])
        dw = pens.wgamma[np.ix_(cand, cols)] - pens.wgamma[cand, own][:, None]
        key = dw * weight_span + ds
        key = np.where(cols[None, :] == own[:, None], np.iinfo(np.int64).max, key)
        ties = np.flatnonzero(key.ravel() == key.min())
        i, j = divmod(int(ties[int(rng.integers(len(ties)))]), len(cols))
        return int(cand[i]), int(cols[j])


def redls_like(g, color, budget, rng, params=None, target=None, trace=False):
    return RedLS(params).improve(g, color, budget, rng, target=target, trace=trace)
