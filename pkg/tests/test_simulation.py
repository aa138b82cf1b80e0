import itertools

import numpy as np
import pytest

from conftest import random_graph
from wvcp.coloring import Move, apply, coloring_score, empty_solution, is_legal
from wvcp.instance import from_edges
from wvcp.localsearch import LocalSearch, make_improver
from wvcp.simulation import (
    SimulationStrategy,
    simulate_greedy,
    simulate_greedy_random,
    simulate_random,
    simulate_with_ls,
)


def _random_outcomes(g):
    """Every score a uniformly random construction can reach (full enumeration)."""
    out = set()

    def rec(s):
        if s.complete:
            out.add(s.score)
            return
        for c in s.free_colors() + [s.k]:
            t = s.copy()
            apply(t, Move(t.next_vertex, c))
            rec(t)

    rec(empty_solution(g))
    return out


def test_random_outcomes_edgeless(edgeless3):
    reachable = _random_outcomes(edgeless3)
    assert min(reachable) == 3 and max(reachable) == 6
    rng = np.random.default_rng(0)
    seen = {simulate_random(empty_solution(edgeless3), rng).score for _ in range(300)}
    assert seen <= reachable
    assert seen == reachable


def test_triangle_always_forced(triangle):
    rng = np.random.default_rng(1)
    for fn in (lambda s: simulate_random(s, rng), lambda s: simulate_greedy_random(s, rng), simulate_greedy):
        assert fn(empty_solution(triangle)).score == 10


def test_complete_input_unchanged(triangle):
    s = simulate_greedy(empty_solution(triangle))
    t = simulate_random(s, np.random.default_rng(0))
    assert np.array_equal(s.color, t.color) and s.score == t.score


def test_simulation_does_not_mutate_input(edgeless3):
    s = empty_solution(edgeless3)
    apply(s, Move(s.next_vertex, 0))
    before = (s.color.copy(), s.k, s.score, s.pos)
    simulate_random(s, np.random.default_rng(0))
    assert np.array_equal(s.color, before[0]) and (s.k, s.score, s.pos) == before[1:]


def test_greedy_random_never_opens_when_avoidable(edgeless3):
    rng = np.random.default_rng(2)
    for _ in range(50):
        assert simulate_greedy_random(empty_solution(edgeless3), rng).score == 3


def test_greedy_random_star():
    g = from_edges(3, [(0, 1), (0, 2)], [10, 1, 1])
    rng = np.random.default_rng(3)
    for _ in range(50):
        assert simulate_greedy_random(empty_solution(g), rng).score == 11


def test_greedy_edgeless_and_deterministic(edgeless3):
    assert simulate_greedy(empty_solution(edgeless3)).score == 3
    g = random_graph(np.random.default_rng(5), 20, 0.4)
    a, b = simulate_greedy(empty_solution(g)), simulate_greedy(empty_solution(g))
    assert np.array_equal(a.color, b.color)


def test_greedy_is_first_fit():
    rng = np.random.default_rng(8)
    for _ in range(30):
        g = random_graph(rng, 15, 0.4)
        s = simulate_greedy(empty_solution(g))
        # independent first-fit in canonical order
        color = {}
        for u in g.order.tolist():
            used = {color[x] for x in g.neighbors(u).tolist() if x in color}
            color[u] = next(c for c in itertools.count() if c not in used)
        assert [color[v] for v in range(g.n)] == s.color.tolist()


def test_identity_improver_equals_greedy():
    rng = np.random.default_rng(9)
    g = random_graph(rng, 12, 0.4)
    s = empty_solution(g)
    color, score = simulate_with_ls(s, LocalSearch(), rng, budget_seconds=0.01)
    ref = simulate_greedy(s)
    assert np.array_equal(color, ref.color) and score == ref.score


@pytest.mark.parametrize("name", ["tw", "afisa", "redls", "ilsts"])
def test_ls_simulation_improves_on_greedy(name, triangle):
    color, score = simulate_with_ls(empty_solution(triangle), make_improver(name), np.random.default_rng(0),
                                    max_iterations=50)
    assert score == 10
    rng = np.random.default_rng(10)
    for _ in range(100):
        g = random_graph(rng, 8, 0.5)
        s = empty_solution(g)
        color, score = simulate_with_ls(s, make_improver(name), rng, max_iterations=200)
        assert is_legal(g, color) and coloring_score(g, color) == score
        assert score <= simulate_greedy(s).score


def test_strategy_validation():
    with pytest.raises(ValueError):
        SimulationStrategy("nope")
    with pytest.raises(ValueError):
        SimulationStrategy("ls")
    assert SimulationStrategy("ls", improver=make_improver("tw")).name == "tw"
