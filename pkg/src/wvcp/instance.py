"""Weighted graph instances: DIMACS parsing, canonical vertex order, reductions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

CLIQUE_RULE = "CLIQUE_RULE"
DOMINATION_RULE = "DOMINATION_RULE"


class InstanceError(ValueError):
    pass


def canonical_order(weight: np.ndarray, degree: np.ndarray) -> np.ndarray:
    """Heaviest first, then highest degree, then lowest id."""
    n = len(weight)
    # lexsort: last key is primary
    return np.lexsort((np.arange(n), -degree, -weight)).astype(np.int64)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    n: int
    edges: np.ndarray  # (m, 2) int64, u < v, sorted, deduplicated
    weight: np.ndarray
    name: str = ""
    degree: np.ndarray = field(init=False, repr=False)
    order: np.ndarray = field(init=False, repr=False)
    indptr: np.ndarray = field(init=False, repr=False)
    indices: np.ndarray = field(init=False, repr=False)
    # position of each vertex inside ``order``
    rank: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        weight = np.asarray(self.weight, dtype=np.int64)
        if weight.shape != (n,):
            raise InstanceError(f"expected {n} weights, got {weight.shape[0]}")
        if n and weight.min() < 1:
            raise InstanceError("vertex weights must be >= 1")
        if len(edges):
            if edges.min() < 0 or edges.max() >= n:
                raise InstanceError("edge endpoint out of range")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise InstanceError("self-loops are not allowed")
            edges = np.sort(edges, axis=1)
            edges = np.unique(edges, axis=0)
        both = np.concatenate([edges, edges[:, ::-1]]) if len(edges) else edges
        both = both[np.lexsort((both[:, 1], both[:, 0]))] if len(both) else both
        degree = np.bincount(both[:, 0], minlength=n).astype(np.int64) if len(both) else np.zeros(n, np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degree, out=indptr[1:])
        indices = both[:, 1].copy() if len(both) else np.zeros(0, np.int64)
        order = canonical_order(weight, degree)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        for name, value in [
            ("edges", edges),
            ("weight", weight),
            ("degree", degree),
            ("order", order),
            ("indptr", indptr),
            ("indices", indices),
            ("rank", rank),
        ]:
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def adjacency_matrix(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        if self.m:
            adj[self.edges[:, 0], self.edges[:, 1]] = True
            adj[self.edges[:, 1], self.edges[:, 0]] = True
        return adj

    def neighbor_sets(self) -> list[set[int]]:
        return [set(self.neighbors(v).tolist()) for v in range(self.n)]

    def __repr__(self):
        return f"WeightedGraph(name={self.name!r}, n={self.n}, m={self.m})"


def from_edges(n: int, edges, weight, name: str = "") -> WeightedGraph:
    edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    return WeightedGraph(n=n, edges=edges, weight=np.asarray(weight, dtype=np.int64), name=name)


def parse_instance(col_text: str, weights_text: str, name: str = "") -> WeightedGraph:
    """Parse a DIMACS edge file (1-indexed) and a one-weight-per-line file."""
    n = None
    edges = []
    for lineno, raw in enumerate(col_text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise InstanceError(f"line {lineno}: malformed header {raw!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise InstanceError(f"line {lineno}: malformed header {raw!r}") from None
        elif parts[0] == "e":
            if n is None:
                raise InstanceError(f"line {lineno}: edge before 'p' header")
            if len(parts) < 3:
                raise InstanceError(f"line {lineno}: malformed edge {raw!r}")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceError(f"line {lineno}: edge endpoint out of range {raw!r}")
            if u != v:
                edges.append((u - 1, v - 1))
        # other line types (n, x, ...) are ignored
    if n is None:
        raise InstanceError("missing 'p edge N M' header")
    weights = []
    for raw in weights_text.splitlines():
        line = raw.strip()
        if line:
            weights.append(int(line))
    if len(weights) != n:
        raise InstanceError(f"weight count {len(weights)} != vertex count {n}")
    if any(w < 1 for w in weights):
        raise InstanceError("vertex weights must be >= 1")
    return from_edges(n, edges, weights, name=name)


def read_instance(col_path, weights_path=None) -> WeightedGraph:
    col_path = Path(col_path)
    if weights_path is None:
        weights_path = col_path.with_name(col_path.name + ".w")
    weights_path = Path(weights_path)
    for p in (col_path, weights_path):
        if not p.is_file():
            raise FileNotFoundError(f"instance file not found: {p}")
    name = col_path.name[: -len(".col")] if col_path.name.endswith(".col") else col_path.stem
    return parse_instance(col_path.read_text(), weights_path.read_text(), name=name)


def format_col(g: WeightedGraph) -> str:
    lines = [f"c {g.name}" if g.name else "c", f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges.tolist()]
    return "\n".join(lines) + "\n"


def format_weights(g: WeightedGraph) -> str:
    return "".join(f"{w}\n" for w in g.weight.tolist())


@dataclass
class ReductionReport:
    removed: list[tuple[int, str]] = field(default_factory=list)
    kept_to_original: list[int] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "removed": [{"vertex": v, "rule": r} for v, r in self.removed],
                "kept_to_original": self.kept_to_original,
            },
            indent=2,
        )


def write_instance(g: WeightedGraph, col_path, report: ReductionReport | None = None):
    """Write ``.col``, ``.col.w`` and (if given) a ``.reduction.json`` next to it."""
    col_path = Path(col_path)
    col_path.parent.mkdir(parents=True, exist_ok=True)
    col_path.write_text(format_col(g))
    col_path.with_name(col_path.name + ".w").write_text(format_weights(g))
    if report is not None:
        col_path.with_name(col_path.name + ".reduction.json").write_text(report.to_json())


def _greedy_clique(seed: int, nbrs: list[set[int]], weight, alive: set[int]) -> list[int]:
    clique = [seed]
    cand = nbrs[seed] & alive
    while cand:
        v = min(cand, key=lambda x: (-weight[x], x))
        clique.append(v)
        cand &= nbrs[v]
    return clique


def _domination_pass(nbrs, weight, alive, removed) -> bool:
    changed = False
    for v1 in sorted(alive):
        n1 = nbrs[v1]
        if n1:
            cand = set().union(*(nbrs[x] for x in n1)) & alive
        else:
            cand = set(alive)
        cand.discard(v1)
        for v2 in sorted(cand):
            if weight[v2] >= weight[v1] and n1 <= nbrs[v2]:
                alive.discard(v1)
                for x in n1:
                    nbrs[x].discard(v1)
                nbrs[v1] = set()
                removed.append((v1, DOMINATION_RULE))
                changed = True
                break
    return changed


def _clique_pass(nbrs, weight, alive, removed) -> bool:
    cliques = {tuple(sorted(_greedy_clique(v, nbrs, weight, alive))) for v in sorted(alive)}
    cliques = [set(c) for c in cliques]
    changed = False
    # lightest first so removals rarely touch a clique's top members
    for v in sorted(alive, key=lambda x: (weight[x], x)):
        d = len(nbrs[v])
        for c in cliques:
            if len(c) <= d:
                continue
            ws = sorted((weight[x] for x in c), reverse=True)
            if ws[d] > weight[v]:
                alive.discard(v)
                for x in nbrs[v]:
                    nbrs[x].discard(v)
                nbrs[v] = set()
                for c2 in cliques:
                    c2.discard(v)
                removed.append((v, CLIQUE_RULE))
                changed = True
                break
    return changed


def reduce(g: WeightedGraph) -> tuple[WeightedGraph, ReductionReport]:
    """Apply the domination and clique reductions to fixpoint.

    The optimal score is preserved: every removed vertex can be put back into
    an existing color group of any solution of the reduced graph without
    raising that group's maximum weight.
    """
    weight = g.weight.tolist()
    nbrs = g.neighbor_sets()
    alive = set(range(g.n))
    removed: list[tuple[int, str]] = []
    while True:
        a = _domination_pass(nbrs, weight, alive, removed)
        b = _clique_pass(nbrs, weight, alive, removed)
        if not (a or b):
            break
    kept = sorted(alive)
    new_id = {v: i for i, v in enumerate(kept)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges.tolist() if u in alive and v in alive]
    reduced = from_edges(len(kept), edges, [weight[v] for v in kept], name=g.name)
    return reduced, ReductionReport(removed=removed, kept_to_original=kept)


def lift_coloring(g: WeightedGraph, report: ReductionReport, color_reduced) -> np.ndarray:
    """Extend a coloring of the reduced graph to the original graph at equal score.

    Removed vertices are reinserted in reverse removal order, each into the
    existing group whose maximum is the heaviest among those free of its neighbors.
    """
    color = np.full(g.n, -1, dtype=np.int64)
    color[np.asarray(report.kept_to_original, dtype=np.int64)] = np.asarray(color_reduced, dtype=np.int64)
    k = int(color.max()) + 1 if g.n and color.max() >= 0 else 0
    gmax = np.zeros(max(k, 1), dtype=np.int64)
    for v in range(g.n):
        if color[v] >= 0:
            gmax[color[v]] = max(gmax[color[v]], g.weight[v])
    for v, _rule in reversed(report.removed):
        used = {int(color[x]) for x in g.neighbors(v) if color[x] >= 0}
        free = [c for c in range(k) if c not in used]
        if free:
            c = max(free, key=lambda c: (gmax[c], -c))
        else:
            c = k
            k += 1
            gmax = np.append(gmax, 0)
        color[v] = c
        gmax[c] = max(gmax[c], g.weight[v])
    return color
