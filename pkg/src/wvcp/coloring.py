"""Partial legal colorings built in canonical vertex order."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import WeightedGraph


class IllegalMoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    vertex: int
    color: int  # == k opens a new group


class PartialSolution:
    """Legal coloring of a prefix of ``g.order``.

    Because the prefix is colored heaviest-first, the first vertex placed in a
    group fixes its maximum weight, and the score only grows when a group opens.
    ``undo`` pops the last construction move in O(deg).
    """

    __slots__ = ("g", "color", "group_max", "k", "pos", "score", "_trail")

    def __init__(self, g: WeightedGraph):
        self.g = g
        self.color = np.full(g.n, -1, dtype=np.int64)
        self.group_max = np.zeros(max(g.n, 1), dtype=np.int64)
        self.k = 0
        self.pos = 0
        self.score = 0
        self._trail: list[bool] = []  # True when the move opened a group

    def copy(self) -> "PartialSolution":
        s = PartialSolution.__new__(PartialSolution)
        s.g = self.g
        s.color = self.color.copy()
        s.group_max = self.group_max.copy()
        s.k = self.k
        s.pos = self.pos
        s.score = self.score
        s._trail = list(self._trail)
        return s

    @property
    def complete(self) -> bool:
        return self.pos >= self.g.n

    @property
    def next_vertex(self) -> int:
        if self.complete:
            raise IllegalMoveError("solution is complete")
        return int(self.g.order[self.pos])

    @property
    def uncolored(self) -> np.ndarray:
        return self.g.order[self.pos :]

    @property
    def groups(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v in self.g.order[: self.pos].tolist():
            out[self.color[v]].append(v)
        return out

    def free_colors(self) -> list[int]:
        """Existing groups with no neighbor of the next vertex, ascending."""
        u = self.next_vertex
        used = np.zeros(self.k + 1, dtype=bool)
        c = self.color[self.g.neighbors(u)]
        used[c[c >= 0]] = True
        return np.flatnonzero(~used[: self.k]).tolist()

    def push(self, color: int) -> None:
        """Color the next vertex without legality checks (tree hot path)."""
        u = self.g.order[self.pos]
        self.color[u] = color
        opened = color == self.k
        if opened:
            w = int(self.g.weight[u])
            self.group_max[color] = w
            self.k += 1
            self.score += w
        self.pos += 1
        self._trail.append(opened)

    def undo(self) -> None:
        if not self._trail:
            raise IllegalMoveError("nothing to undo")
        opened = self._trail.pop()
        self.pos -= 1
        u = self.g.order[self.pos]
        if opened:
            self.k -= 1
            self.score -= int(self.group_max[self.k])
            self.group_max[self.k] = 0
        self.color[u] = -1

    def reset(self, depth: int = 0) -> None:
        while self.pos > depth:
            self.undo()


def empty_solution(g: WeightedGraph) -> PartialSolution:
    return PartialSolution(g)


def legal_moves(s: PartialSolution) -> list[Move]:
    u = s.next_vertex
    return [Move(u, c) for c in s.free_colors()] + [Move(u, s.k)]


def greedy_moves(s: PartialSolution) -> list[Move]:
    """Moves into existing groups; the new-group move only when none exists."""
    u = s.next_vertex
    free = s.free_colors()
    if free:
        return [Move(u, c) for c in free]
    return [Move(u, s.k)]


def apply(s: PartialSolution, m: Move) -> PartialSolution:
    """Apply ``m`` in place after checking it is legal; returns ``s``."""
    if s.complete:
        raise IllegalMoveError("solution is complete")
    u = s.next_vertex
    if m.vertex != u:
        raise IllegalMoveError(f"vertex {m.vertex} is not next in order (expected {u})")
    if not 0 <= m.color <= s.k:
        raise IllegalMoveError(f"color {m.color} outside 0..{s.k}")
    if m.color < s.k and np.any(s.color[s.g.neighbors(u)] == m.color):
        raise IllegalMoveError(f"vertex {u} has a neighbor in group {m.color}")
    s.push(m.color)
    return s


def recompute_score(s: PartialSolution) -> int:
    return int(sum(max(int(s.g.weight[v]) for v in grp) for grp in s.groups if grp))


def coloring_score(g: WeightedGraph, color) -> int:
    """Score of a complete coloring given as a per-vertex color array."""
    color = np.asarray(color)
    if g.n == 0:
        return 0
    gmax = np.zeros(int(color.max()) + 1, dtype=np.int64)
    np.maximum.at(gmax, color, g.weight)
    return int(gmax.sum())


def is_legal(g: WeightedGraph, color) -> bool:
    color = np.asarray(color)
    if g.n and color.min() < 0:
        return False
    if g.m == 0:
        return True
    return not np.any(color[g.edges[:, 0]] == color[g.edges[:, 1]])


def normalize_colors(color) -> np.ndarray:
    """Relabel groups 0..k-1 by first appearance, dropping gaps."""
    color = np.asarray(color, dtype=np.int64)
    out = np.empty_like(color)
    mapping: dict[int, int] = {}
    for v, c in enumerate(color.tolist()):
        if c not in mapping:
            mapping[c] = len(mapping)
        out[v] = mapping[c]
    return out


def format_solution(color, score: int) -> str:
    lines = [f"{v} {c}" for v, c in enumerate(np.asarray(color).tolist())]
    lines.append(f"score {score}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[dict[int, int], int | None]:
    colors: dict[int, int] = {}
    score = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "score":
            score = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'vertex color', got {raw!r}")
        colors[int(parts[0])] = int(parts[1])
    return colors, score
