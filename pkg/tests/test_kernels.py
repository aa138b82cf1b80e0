import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, random_graph
from wvcp import _kernels
from wvcp.coloring import Move, apply, coloring_score, empty_solution, is_legal, legal_moves
from wvcp.localsearch.state import LsSolution

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _prefix(g, r, depth):
    s = empty_solution(g)
    for _ in range(min(depth, g.n)):
        moves = legal_moves(s)
        apply(s, moves[r.randrange(len(moves))])
    return s


def _complete(fn, s, mode, draws):
    color, gmax = s.color.copy(), s.group_max.copy()
    g = s.g
    k, score = fn(g.indptr, g.indices, g.weight, g.order, color, gmax, s.k, s.pos, s.score, mode, draws)
    return color, gmax, int(k), int(score)


@needs_numba
@settings(max_examples=200, deadline=None)
@given(graphs(n_max=14), st.randoms(use_true_random=False), st.integers(0, 14), st.sampled_from([0, 1, 2]))
def test_complete_backends_agree(g, r, depth, mode):
    s = _prefix(g, r, depth)
    draws = np.random.default_rng(r.randrange(2**32)).random(max(g.n, 1))
    a = _complete(_kernels._complete_py, s, mode, draws)
    b = _complete(_kernels._complete_nb, s, mode, draws)
    assert np.array_equal(a[0], b[0]) and a[2:] == b[2:]
    assert is_legal(g, a[0]) and coloring_score(g, a[0]) == a[3]


def _random_ls_state(rng, n, p, legal):
    g = random_graph(rng, n, p)
    s = empty_solution(g)
    while not s.complete:
        moves = legal_moves(s)
        apply(s, moves[int(rng.integers(len(moves)))])
    color = s.color.copy()
    if not legal:
        # shake a few vertices into arbitrary groups
        for v in rng.choice(n, size=max(1, n // 4), replace=False):
            color[v] = rng.integers(0, min(s.k + 1, n))
    return LsSolution(g, color)


@pytest.mark.parametrize("legal_only", [True, False])
def test_scan_vectorized_matches_loop(legal_only):
    rng = np.random.default_rng(7)
    backends = [_kernels._scan_py, _kernels._scan_loop]
    if _kernels.HAVE_NUMBA:
        backends.append(_kernels._scan_nb)
    for trial in range(150):
        n = int(rng.integers(2, 16))
        s = _random_ls_state(rng, n, float(rng.choice([0.2, 0.5, 0.8])), legal_only)
        tabu = rng.integers(0, 6, size=(n, n)).astype(np.int64)
        it = int(rng.integers(0, 5))
        best = s.score - int(rng.integers(0, 3)) if legal_only else s.score + 5
        args = (s.weight, s.color, s.gamma, s.gmax, s.gcnt, s.gsecond, s.active_colors(), tabu, it,
                s.score, best, s.conflicts, int(rng.integers(1, 8)), legal_only,
                np.arange(n, dtype=np.int64), float(rng.random()))
        outs = [tuple(int(x) for x in f(*args)) for f in backends]
        assert all(o == outs[0] for o in outs), (trial, outs)


def test_scan_delta_matches_move():
    rng = np.random.default_rng(3)
    for _ in range(100):
        s = _random_ls_state(rng, int(rng.integers(3, 14)), 0.4, legal=False)
        n = s.g.n
        v, c, obj, ds, _ = _kernels.scan_moves(
            s.weight, s.color, s.gamma, s.gmax, s.gcnt, s.gsecond, s.active_colors(),
            np.zeros((n, n), np.int64), 0, s.score, s.score, s.conflicts, 3, False,
            np.arange(n, dtype=np.int64), 0.5)
        if v < 0:
            continue
        score0, conf0 = s.score, s.conflicts
        s.move(v, c)
        assert s.score - score0 == ds
        assert (s.score - score0) + 3 * (s.conflicts - conf0) == obj


def test_backend_name():
    assert _kernels.backend() in ("numba", "numpy")
