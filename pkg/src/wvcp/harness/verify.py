from __future__ import annotations

from ..coloring import parse_solution
from ..instance import WeightedGraph


class VerificationError(ValueError):
    pass


def verify_solution(g: WeightedGraph, serialized: str) -> dict:
    """Re-check a solution file from scratch: every vertex colored, no monochromatic edge, score."""
    colors, claimed = parse_solution(serialized)
    missing = [v for v in range(g.n) if v not in colors]
    if missing:
        raise VerificationError(f"{len(missing)} uncolored vertices, first {missing[0]}")
    extra = [v for v in colors if not 0 <= v < g.n]
    if extra:
        raise VerificationError(f"unknown vertex id {extra[0]}")
    for u, v in g.edges.tolist():
        if colors[u] == colors[v]:
            raise VerificationError(f"edge ({u}, {v}) is monochromatic (color {colors[u]})")
    heaviest: dict[int, int] = {}
    for v, c in colors.items():
        w = int(g.weight[v])
        if heaviest.get(c, 0) < w:
            heaviest[c] = w
    score = sum(heaviest.values())
    if claimed is not None and claimed != score:
        raise VerificationError(f"score mismatch: file says {claimed}, recomputed {score}")
    return {"valid": True, "score": score}
