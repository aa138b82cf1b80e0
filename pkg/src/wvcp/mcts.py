"""Monte Carlo tree search over partial legal colorings, with bound pruning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clock import WallClock
from .coloring import PartialSolution, empty_solution
from .instance import WeightedGraph
from .records import RunRecord, StopCondition, ms

PRUNED = object()


@dataclass
class SelectionParams:
    c: float = 1.0

    def __post_init__(self):
        if self.c < 0:
            raise ValueError("exploration coefficient must be >= 0")


def uct_value(child_rank: int, rank_sum: int, parent_visits: int, child_visits: int, c: float) -> float:
    if child_visits <= 0:
        raise ValueError("uct_value on an unvisited child")
    if parent_visits < 1 or not 1 <= child_rank <= rank_sum:
        raise ValueError("invalid rank or visit counts")
    return child_rank / rank_sum + c * math.sqrt(2.0 * math.log(parent_visits) / child_visits)


def rank_children(avg_scores) -> list[int]:
    """Rank 1 for the worst (highest) average, l for the best.

    Equal averages: the lower child index gets the higher rank.
    """
    l = len(avg_scores)
    order = sorted(range(l), key=lambda i: (-avg_scores[i], -i))
    ranks = [0] * l
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return ranks


class TreeNode:
    __slots__ = ("parent", "slot", "color", "depth", "k", "partial_score", "moves",
                 "children", "live", "visits", "total", "avg_score", "pruned")

    def __init__(self, parent, slot, color, sol: PartialSolution):
        self.parent = parent
        self.slot = slot
        self.color = color
        self.depth = sol.pos
        self.k = sol.k
        self.partial_score = sol.score
        if sol.complete:
            self.moves = []
        else:
            self.moves = sol.free_colors() + [sol.k]
        self.children = [None] * len(self.moves)
        self.live = len(self.moves)
        self.visits = 0
        self.total = 0
        self.avg_score = 0.0
        self.pruned = False

    @property
    def terminal(self) -> bool:
        return not self.moves

    def open_children(self) -> list["TreeNode"]:
        return [ch for ch in self.children if isinstance(ch, TreeNode)]

    def child_score(self, idx: int, next_weight: int) -> int:
        return self.partial_score + (next_weight if self.moves[idx] == self.k else 0)

    def __repr__(self):
        return (f"TreeNode(depth={self.depth}, color={self.color}, score={self.partial_score}, "
                f"visits={self.visits}, avg={self.avg_score:.3f}, live={self.live})")


class SearchTree:
    """Tree plus incumbent. ``exhausted`` certifies ``best_score`` optimal."""

    def __init__(self, g: WeightedGraph, params: SelectionParams | None = None, prune: bool = True):
        self.g = g
        self.c = (params or SelectionParams()).c
        self.prune = prune
        self.sol = empty_solution(g)
        self.best_score = math.inf
        self.best_color = None
        self.iterations = 0
        self.expansions = 0
        self.exhausted = False
        if g.n:
            self.sol.push(0)
            self.root = TreeNode(None, -1, 0, self.sol)
        else:
            self.root = None
            self.best_score = 0
            self.best_color = np.zeros(0, dtype=np.int64)
            self.exhausted = True

    def _next_weight(self, node: TreeNode) -> int:
        return int(self.g.weight[self.g.order[node.depth]])

    def prune_node(self, node: TreeNode) -> None:
        """Delete ``node``; parents left without live slots follow (rule 3)."""
        while not node.pruned:
            node.pruned = True
            parent = node.parent
            if parent is None:
                self.exhausted = True
                return
            parent.children[node.slot] = PRUNED
            parent.live -= 1
            if parent.live > 0:
                return
            node = parent

    def prune_slot(self, node: TreeNode, idx: int) -> None:
        node.children[idx] = PRUNED
        node.live -= 1
        if node.live == 0:
            self.prune_node(node)

    def select_and_expand(self, c: float | None = None):
        """Descend to a leaf and open one child; None means restart (something was pruned)."""
        c = self.c if c is None else c
        sol = self.sol
        sol.reset(1)
        node = self.root
        while True:
            if self.prune and node.partial_score >= self.best_score:
                self.prune_node(node)
                return None
            if node.terminal:
                return node
            nw = self._next_weight(node)
            for idx, slot in enumerate(node.children):
                if slot is not None:
                    continue
                if self.prune and node.child_score(idx, nw) >= self.best_score:
                    self.prune_slot(node, idx)
                    if node.pruned:
                        return None
                    continue
                sol.push(node.moves[idx])
                child = TreeNode(node, idx, node.moves[idx], sol)
                node.children[idx] = child
                self.expansions += 1
                return child
            if node.live == 0:
                self.prune_node(node)
                return None
            node = self.select_child(node, c)
            sol.push(node.color)

    @staticmethod
    def select_child(node: TreeNode, c: float) -> TreeNode:
        """Highest UCT value among open children; ties go to the lowest index."""
        kids = [ch for ch in node.children if ch.__class__ is TreeNode]
        ranks = rank_children([ch.avg_score for ch in kids])
        total = len(kids) * (len(kids) + 1) // 2
        explore = 2.0 * math.log(node.visits) if node.visits > 0 else 0.0
        best, best_val = None, -math.inf
        for ch, r in zip(kids, ranks):
            # same value as uct_value(r, total, node.visits, ch.visits, c)
            val = r / total + c * math.sqrt(explore / ch.visits)
            if val > best_val:
                best, best_val = ch, val
        return best

    @staticmethod
    def backpropagate(node: TreeNode, final_score: int) -> None:
        while node is not None:
            node.avg_score = (node.avg_score * node.visits + final_score) / (node.visits + 1)
            node.visits += 1
            node.total += final_score
            node = node.parent

    def prune_after_improvement(self, new_best: int) -> None:
        """Rule 2: drop every open node and unopened slot scoring >= ``new_best``."""
        self.best_score = min(self.best_score, new_best)
        if not self.prune or self.root is None or self.root.pruned:
            return
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.pruned:
                continue
            if node.partial_score >= self.best_score:
                self.prune_node(node)
                continue
            if node.terminal:
                continue
            nw = self._next_weight(node)
            for idx, slot in enumerate(node.children):
                if node.pruned:
                    break
                if slot is None:
                    if node.child_score(idx, nw) >= self.best_score:
                        self.prune_slot(node, idx)
                elif slot is not PRUNED:
                    stack.append(slot)

    def iterate(self, simulate, clock=None, target=None):
        """One select/expand, simulate, update, prune round.

        Returns (color, score, improved), or None once the tree is exhausted.
        """
        while True:
            if self.exhausted:
                return None
            node = self.select_and_expand()
            if node is not None:
                break
        if node.terminal:
            color, score = self.sol.color.copy(), self.sol.score
        else:
            color, score = simulate(self.sol, clock=clock, target=target)
        self.backpropagate(node, score)
        self.iterations += 1
        improved = score < self.best_score
        if improved:
            self.best_score = score
            self.best_color = np.asarray(color).copy()
            self.prune_after_improvement(score)
        if node.terminal:
            self.prune_node(node)
        return color, score, improved


def run(g: WeightedGraph, strategy, params: SelectionParams | None = None,
        stop: StopCondition | None = None, seed: int = 0, clock=None, prune: bool = True,
        instance: str | None = None, method: str | None = None) -> RunRecord:
    """Search until the stop condition, the target, or exhaustion (optimality proof)."""
    params = params or SelectionParams()
    stop = stop or StopCondition()
    clock = clock or WallClock()
    tree = SearchTree(g, params, prune=prune)
    series: list[tuple[float, int]] = []
    t_best = 0.0
    while not tree.exhausted:
        if stop.target is not None and tree.best_score <= stop.target:
            break
        if stop.max_iterations is not None and tree.iterations >= stop.max_iterations:
            break
        if stop.time_limit is not None and clock.elapsed() >= stop.time_limit:
            break
        out = tree.iterate(strategy, clock=clock, target=stop.target)
        clock.tick()
        if out is None:
            break
        if out[2]:
            t_best = ms(clock.elapsed())
            series.append((t_best, int(tree.best_score)))
    total = ms(clock.elapsed())
    best = int(tree.best_score) if tree.best_color is not None else -1
    series.append((total, best))
    return RunRecord(
        instance=instance if instance is not None else g.name,
        method=method if method is not None else f"mcts+{getattr(strategy, 'name', 'custom')}",
        seed=seed,
        best_score=best,
        time_to_best_ms=t_best,
        total_time_ms=total,
        proven_optimal=tree.exhausted,
        series=series,
        best_color=tree.best_color,
        iterations=tree.iterations,
    )
