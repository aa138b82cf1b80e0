"""Exact optimum by exhaustive enumeration, for small graphs only."""

from __future__ import annotations

from ..instance import WeightedGraph

MAX_ORACLE_N = 12


def brute_force_optimum(g: WeightedGraph) -> int:
    """Exact minimum score by sequential coloring in canonical order.

    Each vertex goes into an existing compatible group or one new group, which
    enumerates every partition into independent sets exactly once. Branches
    already at or above the incumbent are cut; that never hides the optimum.
    """
    if g.n > MAX_ORACLE_N:
        raise ValueError(f"brute force limited to n <= {MAX_ORACLE_N} (got {g.n})")
    if g.n == 0:
        return 0
    order = g.order.tolist()
    weight = g.weight.tolist()
    nbrs = g.neighbor_sets()
    groups: list[set[int]] = []
    best = sum(weight)

    def dfs(t: int, score: int) -> None:
        nonlocal best
        if score >= best:
            return
        if t == len(order):
            best = score
            return
        u = order[t]
        for grp in groups:
            if not (nbrs[u] & grp):
                grp.add(u)
                dfs(t + 1, score)
                grp.discard(u)
        groups.append({u})
        dfs(t + 1, score + weight[u])
        groups.pop()

    dfs(0, 0)
    return best


def set_partitions(n: int):
    """All partitions of range(n) as restricted growth strings."""
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i: int, m: int):
        if i == n:
            yield list(a)
            return
        for c in range(m + 1):
            a[i] = c
            yield from rec(i + 1, max(m, c + 1))

    a[0] = 0
    yield from rec(1, 1)


def partition_optimum(g: WeightedGraph) -> int:
    """Minimum over all set partitions of V into independent sets (no pruning)."""
    if g.n > 10:
        raise ValueError("partition enumeration limited to n <= 10")
    edges = g.edges.tolist()
    weight = g.weight.tolist()
    best = None
    for labels in set_partitions(g.n):
        if any(labels[u] == labels[v] for u, v in edges):
            continue
        top: dict[int, int] = {}
        for v, c in enumerate(labels):
            top[c] = max(top.get(c, 0), weight[v])
        s = sum(top.values())
        if best is None or s < best:
            best = s
    return 0 if best is None else best
