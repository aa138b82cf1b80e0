from __future__ import annotations

import numpy as np

from ..coloring import coloring_score, is_legal, normalize_colors
from ..instance import WeightedGraph


class LocalSearchError(RuntimeError):
    pass


class LsSolution:
    """Coloring with incremental bookkeeping; conflicts and uncolored (-1) allowed.

    Colors live in ``0..n-1``; empty groups are allowed. ``gamma[v, c]`` counts
    colored neighbors of ``v`` colored ``c``. Per group we keep the max weight, how many
    members carry it, and the largest weight strictly below it, so the score
    change of removing the heaviest member is O(1).
    """

    def __init__(self, g: WeightedGraph, color):
        self.g = g
        n = g.n
        self.weight = g.weight
        self.color = np.asarray(color, dtype=np.int64).copy()
        if n and (self.color.min() < -1 or self.color.max() >= n):
            raise LocalSearchError("colors must lie in -1..n-1")
        self.gamma = np.zeros((n, max(n, 1)), dtype=np.int64)
        if g.m:
            u, v = g.edges[:, 0], g.edges[:, 1]
            cu, cv = self.color[u], self.color[v]
            np.add.at(self.gamma, (u[cv >= 0], cv[cv >= 0]), 1)
            np.add.at(self.gamma, (v[cu >= 0], cu[cu >= 0]), 1)
        colored = self.color[self.color >= 0]
        self.gsize = np.bincount(colored, minlength=max(n, 1)).astype(np.int64)
        self.gmax = np.zeros(max(n, 1), dtype=np.int64)
        self.gcnt = np.zeros(max(n, 1), dtype=np.int64)
        self.gsecond = np.zeros(max(n, 1), dtype=np.int64)
        for c in np.flatnonzero(self.gsize):
            self._refresh(int(c))
        self.score = int(self.gmax.sum())
        self.conflicts = len(self.conflict_edges())

    def copy(self) -> "LsSolution":
        s = LsSolution.__new__(LsSolution)
        s.g = self.g
        s.weight = self.weight
        for name in ("color", "gamma", "gsize", "gmax", "gcnt", "gsecond"):
            setattr(s, name, getattr(self, name).copy())
        s.score = self.score
        s.conflicts = self.conflicts
        return s

    def _refresh(self, c: int) -> None:
        members = self.weight[self.color == c]
        if len(members) == 0:
            self.gmax[c] = self.gcnt[c] = self.gsecond[c] = 0
            return
        top = members.max()
        self.gmax[c] = top
        self.gcnt[c] = int(np.count_nonzero(members == top))
        below = members[members < top]
        self.gsecond[c] = below.max() if len(below) else 0

    @property
    def legal(self) -> bool:
        return self.conflicts == 0

    @property
    def complete(self) -> bool:
        return not np.any(self.color < 0)

    def uncolored(self) -> np.ndarray:
        return np.flatnonzero(self.color < 0)

    def empty_color(self) -> int:
        empties = np.flatnonzero(self.gsize == 0)
        return int(empties[0]) if len(empties) else -1

    def active_colors(self) -> np.ndarray:
        """Non-empty groups plus the lowest empty one, ascending."""
        act = np.flatnonzero(self.gsize > 0)
        e = self.empty_color()
        if e >= 0:
            act = np.sort(np.append(act, e))
        return act.astype(np.int64)

    def move_delta(self, v: int, c: int) -> tuple[int, int]:
        """(score delta, conflict delta) of recoloring ``v`` to ``c``."""
        a = self.color[v]
        if c == a:
            return 0, 0
        w = int(self.weight[v])
        out = 0
        dc = 0
        if a >= 0:
            if w >= self.gmax[a] and self.gcnt[a] == 1:
                out = int(self.gsecond[a]) - w
            dc -= int(self.gamma[v, a])
        din = 0
        if c >= 0:
            din = max(0, w - int(self.gmax[c]))
            dc += int(self.gamma[v, c])
        return out + din, dc

    def move(self, v: int, c: int) -> None:
        a = int(self.color[v])
        if c == a:
            return
        ds, dc = self.move_delta(v, c)
        nb = self.g.neighbors(v)
        self.color[v] = c
        if a >= 0:
            self.gamma[nb, a] -= 1
            self.gsize[a] -= 1
            self._refresh(a)
        if c >= 0:
            self.gamma[nb, c] += 1
            self.gsize[c] += 1
            self._refresh(c)
        self.score += ds
        self.conflicts += dc

    def conflicting_vertices(self) -> np.ndarray:
        safe = np.maximum(self.color, 0)
        own = self.gamma[np.arange(self.g.n), safe]
        return np.flatnonzero((own > 0) & (self.color >= 0))

    def conflict_edges(self) -> np.ndarray:
        e = self.g.edges
        if not len(e):
            return e
        cu, cv = self.color[e[:, 0]], self.color[e[:, 1]]
        return e[(cu == cv) & (cu >= 0)]

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.color == c)

    def recompute_score(self) -> int:
        colored = self.color >= 0
        if not colored.any():
            return 0
        gmax = np.zeros(self.g.n, dtype=np.int64)
        np.maximum.at(gmax, self.color[colored], self.weight[colored])
        return int(gmax.sum())

    def check(self) -> None:
        """Full consistency check; used by tests and debug paths."""
        fresh = LsSolution(self.g, self.color)
        for name in ("gamma", "gsize", "gmax", "gcnt", "gsecond"):
            if not np.array_equal(getattr(fresh, name), getattr(self, name)):
                raise LocalSearchError(f"inconsistent {name}")
        if fresh.score != self.score or fresh.conflicts != self.conflicts:
            raise LocalSearchError("inconsistent score/conflicts")


def check_result(g: WeightedGraph, color, input_score: int) -> int:
    """Validate an improver's output: legal and no worse than its input."""
    if not is_legal(g, color):
        raise LocalSearchError("local search returned an illegal coloring")
    score = coloring_score(g, color)
    if score > input_score:
        raise LocalSearchError(f"local search worsened the score: {input_score} -> {score}")
    return score


def compact(color) -> np.ndarray:
    return normalize_colors(color)
