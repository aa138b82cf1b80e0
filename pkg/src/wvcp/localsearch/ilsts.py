from __future__ import annotations

import numpy as np

from .base import LocalSearch, Tracker, legal_descent, tenure
from .state import LsSolution


def grenade(s: LsSolution, u: int, c: int, exclude_tabu=None) -> list[int]:
    """Place ``u`` in group ``c`` after evicting its neighbors there.

    Each evicted neighbor goes to the heaviest other group that is free of its
    neighbors and already at least as heavy as it (so the score does not rise);
    failing that it is uncolored. Returns the vertices sent to the uncolored set.
    """
    evicted = [int(x) for x in s.g.neighbors(u) if s.color[x] == c]
    to_u = []
    for x in evicted:
        s.move(x, -1)
    s.move(u, c)
    for x in evicted:
        h = _zero_cost_home(s, x, forbid=c, tabu=exclude_tabu)
        if h < 0:
            to_u.append(x)
        else:
            s.move(x, h)
    return to_u


def _zero_cost_home(s: LsSolution, x: int, forbid: int, tabu=None) -> int:
    groups = np.flatnonzero((s.gsize > 0) & (s.gamma[x] == 0) & (s.gmax >= s.weight[x]))
    groups = groups[groups != forbid]
    if tabu is not None and len(groups):
        groups = groups[~tabu(x, groups)]
    if len(groups) == 0:
        return -1
    return int(groups[np.argmax(s.gmax[groups])])


class Ilsts(LocalSearch):
    """Iterated local search in the partial legal space.

    Perturbation uncolors the heaviest vertices of 1 to 3 random groups; the
    reinsertion phase places uncolored vertices heaviest first by plain moves
    or grenade moves under a tabu list, then a legal descent polishes the
    result. Vertices still uncolored at the step cap get plain cheapest
    placements. A round that ends worse than it started is rolled back.
    """

    name = "ilsts"

    def improve(self, g, color, budget, rng, target=None, trace=False):
        s = LsSolution(g, color)
        tracker = Tracker(s, trace, self.on_improve)
        n = g.n
        p = self.params
        tabu_until = np.zeros((n, max(n, 1)), dtype=np.int64)
        it = 0
        rounds = 0
        while (target is None or tracker.best_score > target) and budget.step():
            rounds += 1
            snapshot = s.copy()
            groups = np.flatnonzero(s.gsize > 0)
            if len(groups) < 2:
                legal_descent(s, rng, tracker)
                break
            r = int(rng.integers(1, p.max_perturb_groups + 1))
            chosen = rng.choice(groups, size=min(r, len(groups)), replace=False)
            for a in chosen.tolist():
                heavy = s.members(a)
                for v in heavy[s.weight[heavy] == s.gmax[a]].tolist():
                    s.move(v, -1)
                    tabu_until[v, a] = it + tenure(p, n, rng)
            steps = 0
            while steps < p.reinsert_steps_factor * n and budget.step():
                pending = s.uncolored()
                if len(pending) == 0:
                    break
                # heaviest first, canonical order on ties
                u = int(pending[np.argmin(g.rank[pending])])
                c = self._best_placement(s, u, tabu_until, it, rng)
                for x in grenade(s, u, c, exclude_tabu=lambda x, gs: tabu_until[x, gs] > it):
                    tabu_until[x, c] = it + tenure(p, n, rng)
                it += 1
                steps += 1
                tracker.observe(s)
            # step cap or budget hit: finish with plain cheapest placements
            for u in s.uncolored()[np.argsort(g.rank[s.uncolored()])].tolist():
                s.move(u, self._cheapest_plain(s, u))
            tracker.observe(s)
            legal_descent(s, rng, tracker)
            if s.score > snapshot.score:
                s = snapshot
        return tracker.result(rounds)

    def _best_placement(self, s: LsSolution, u: int, tabu_until, it: int, rng) -> int:
        """Group minimizing score change plus the weight of vertices left uncolored."""
        w = int(s.weight[u])
        best_key = None
        best = []
        for c in s.active_colors().tolist():
            if s.gsize[c] and tabu_until[u, c] > it:
                continue
            if s.gamma[u, c] == 0:
                key = max(0, w - int(s.gmax[c]))
            else:
                key = self._grenade_cost(s, u, c, tabu_until, it)
            if best_key is None or key < best_key:
                best_key, best = key, [c]
            elif key == best_key:
                best.append(c)
        return best[int(rng.integers(len(best)))]

    @staticmethod
    def _cheapest_plain(s: LsSolution, u: int) -> int:
        cols = s.active_colors()
        cols = cols[s.gamma[u, cols] == 0]
        cost = np.maximum(0, s.weight[u] - s.gmax[cols])
        return int(cols[np.argmin(cost)])

    @staticmethod
    def _grenade_cost(s: LsSolution, u: int, c: int, tabu_until, it: int) -> int:
        members = s.members(c)
        nb = set(s.g.neighbors(u).tolist())
        evicted = [int(x) for x in members.tolist() if x in nb]
        kept = [int(x) for x in members.tolist() if x not in nb]
        new_max = max([int(s.weight[u])] + [int(s.weight[x]) for x in kept])
        cost = new_max - int(s.gmax[c])
        for x in evicted:
            groups = np.flatnonzero((s.gsize > 0) & (s.gamma[x] == 0) & (s.gmax >= s.weight[x]))
            groups = groups[(groups != c) & ~(tabu_until[x, groups] > it)]
            if len(groups) == 0:
                cost += int(s.weight[x])
        return cost


def ilsts_like(g, color, budget, rng, params=None, target=None, trace=False):
    return Ilsts(params).improve(g, color, budget, rng, target=target, trace=trace)
