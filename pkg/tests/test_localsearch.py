import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, random_graph
from wvcp.clock import Budget
from wvcp.coloring import coloring_score, empty_solution, is_legal
from wvcp.harness.oracle import brute_force_optimum
from wvcp.instance import from_edges
from wvcp.localsearch import (
    IMPROVERS,
    Afisa,
    EdgePenalties,
    LocalSearchError,
    LsSolution,
    TabuWeight,
    grenade,
    make_improver,
    one_move_neighbors,
)
from wvcp.simulation import simulate_greedy

NAMES = sorted(IMPROVERS)


def _greedy(g):
    return simulate_greedy(empty_solution(g)).color


def test_k3_has_no_legal_move_into_existing_group(triangle):
    s = LsSolution(triangle, [0, 1, 2])
    for v, c, ds in one_move_neighbors(s):
        assert s.gsize[c] == 0
        assert ds == 0  # leaving a singleton for an empty group


def test_path_deltas_against_recompute():
    # u - v - x, weights 5, 3, 5; groups {u, x}, {v}
    g = from_edges(3, [(0, 1), (1, 2)], [5, 3, 5])
    s = LsSolution(g, [0, 1, 0])
    legal = {(v, c): ds for v, c, ds in one_move_neighbors(s)}
    assert (0, 1) not in legal  # u into v's group conflicts
    for (v, c), ds in legal.items():
        t = s.color.copy()
        t[v] = c
        assert ds == coloring_score(g, t) - s.score
    # v to a fresh group: singleton out (-3), new group in (+3)
    assert legal[(1, 2)] == 0


def test_unique_max_leaving_uses_second_max():
    g = from_edges(3, [], [9, 4, 2])
    s = LsSolution(g, [0, 0, 0])
    ds, dc = s.move_delta(0, 1)
    assert dc == 0
    assert ds == -5 + 9  # source loses 9 - 4, the new group gains 9


def test_one_move_delta_matches_recompute_10k():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 10_000:
        n = int(rng.integers(2, 15))
        g = random_graph(rng, n, float(rng.choice([0.2, 0.5, 0.8])), wmax=20)
        color = rng.integers(-1, n, n)
        s = LsSolution(g, color)
        for _ in range(50):
            v = int(rng.integers(n))
            c = int(rng.integers(-1, n))
            ds, dc = s.move_delta(v, c)
            t = s.copy()
            t.color[v] = c
            fresh = LsSolution(g, t.color)
            assert ds == fresh.score - s.score
            assert dc == fresh.conflicts - s.conflicts
            s.move(v, c)
            checked += 1
        s.check()


def test_conflict_set_matches_edges():
    rng = np.random.default_rng(12)
    g = random_graph(rng, 12, 0.5)
    s = LsSolution(g, rng.integers(0, 4, 12))
    mono = {(u, v) for u, v in g.edges.tolist() if s.color[u] == s.color[v]}
    assert {tuple(e) for e in s.conflict_edges().tolist()} == mono
    assert s.conflicts == len(mono)


@pytest.mark.parametrize("name", NAMES)
def test_triangle_returns_input(name, triangle):
    res = make_improver(name).improve(triangle, [0, 1, 2], Budget(max_iterations=100), np.random.default_rng(0))
    assert res.score == 10 and is_legal(triangle, res.color)


@pytest.mark.parametrize("name", NAMES)
def test_zero_budget_returns_input(name):
    g = random_graph(np.random.default_rng(13), 10, 0.4)
    start = _greedy(g)
    res = make_improver(name).improve(g, start, Budget(max_iterations=0), np.random.default_rng(0))
    assert np.array_equal(res.color, start)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(g=graphs(n_min=1, n_max=8), seed=st.integers(0, 2**31))
def test_contract_small_graphs(name, g, seed):
    start = _greedy(g)
    s0 = coloring_score(g, start)
    res = make_improver(name).improve(g, start, Budget(max_iterations=300), np.random.default_rng(seed))
    assert is_legal(g, res.color)
    assert coloring_score(g, res.color) == res.score
    assert brute_force_optimum(g) <= res.score <= s0


@pytest.mark.parametrize("name", NAMES)
def test_best_legal_tracking(name):
    rng = np.random.default_rng(14)
    for _ in range(10):
        g = random_graph(rng, 15, 0.4, wmax=20)
        res = make_improver(name).improve(g, _greedy(g), Budget(max_iterations=200), rng, trace=True)
        legal = [sc for sc, ok in res.trace if ok]
        assert res.score == min(legal)


def test_tabu_rule_respected():
    rng = np.random.default_rng(15)
    for _ in range(10):
        g = random_graph(rng, 20, 0.3, wmax=20)
        tw = TabuWeight()
        res = tw.improve(g, _greedy(g), Budget(max_iterations=300), rng, trace=True)
        assert tw.tabu_log
        for it, v, c, was_tabu, aspiration in tw.tabu_log:
            assert not was_tabu or aspiration, (it, v, c)
        assert all(ok for _, ok in res.trace)


def test_tabu_weight_rejects_illegal_start(triangle):
    with pytest.raises(LocalSearchError):
        TabuWeight().improve(triangle, [0, 0, 1], Budget(max_iterations=5), np.random.default_rng(0))


def test_afisa_huge_phi_stays_legal():
    rng = np.random.default_rng(16)
    for _ in range(10):
        g = random_graph(rng, 15, 0.4, wmax=20)
        a = Afisa(phi_fixed=10**6)
        res = a.improve(g, _greedy(g), Budget(max_iterations=200), rng, trace=True)
        assert all(ok for _, ok in res.trace)


def test_afisa_phi_schedule_oscillates():
    rng = np.random.default_rng(17)
    g = random_graph(rng, 25, 0.5, wmax=30)
    a = Afisa()
    res = a.improve(g, _greedy(g), Budget(max_iterations=2000), rng, trace=True)
    assert min(a.phi_log) >= 1
    assert any(not ok for _, ok in res.trace)  # it did visit conflicting states
    assert is_legal(g, res.color)


def test_edge_penalty_counts_passes():
    g = from_edges(3, [(0, 1), (1, 2)], [1, 1, 1])
    s = LsSolution(g, [0, 0, 1])
    pens = EdgePenalties(s, base=1)
    for _ in range(3):
        pens.end_pass(s.conflict_edges(), s.color)
    assert pens.penalty(0, 1) == 1 + 3
    assert pens.penalty(1, 2) == 1
    fresh = EdgePenalties.__new__(EdgePenalties)
    fresh.g, fresh.pen = g, pens.pen
    fresh.rebuild(s.color)
    assert np.array_equal(fresh.wgamma, pens.wgamma)


def test_grenade_into_empty_group_is_plain_move():
    g = from_edges(3, [(0, 1)], [3, 2, 1])
    s = LsSolution(g, [0, 1, 0])
    t = s.copy()
    assert grenade(s, 2, 2) == []
    t.move(2, 2)
    assert np.array_equal(s.color, t.color) and s.score == t.score


def test_grenade_relocates_neighbor():
    # u=0 joins group 0 = {x=1, y=2}; x is u's neighbor with a legal home in group 1 = {z=3, q=4}
    g = from_edges(5, [(0, 1), (0, 3)], [2, 3, 1, 5, 4])
    s = LsSolution(g, [2, 0, 0, 1, 1])
    assert s.legal
    sent = grenade(s, 0, 0)
    assert sent == []
    assert s.color[0] == 0 and s.color[1] == 1
    assert s.conflicts == 0 and is_legal(g, s.color)
    s.check()
