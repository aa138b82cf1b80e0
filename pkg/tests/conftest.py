import numpy as np
import pytest
from hypothesis import strategies as st

from wvcp.instance import from_edges


def random_graph(rng, n, p, wmax=10, name=""):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edges(n, edges, rng.integers(1, wmax + 1, n), name=name)


def corpus(count=200, seed=2024, n_min=3, n_max=9):
    """Random weighted graphs, n_min <= n <= n_max, edge probability cycling over 0.2/0.5/0.8.

    n starts at 3: below that the search tree has at most one expandable node.
    """
    rng = np.random.default_rng(seed)
    return [random_graph(rng, int(rng.integers(n_min, n_max + 1)), (0.2, 0.5, 0.8)[i % 3], name=f"g{i}")
            for i in range(count)]


@st.composite
def graphs(draw, n_min=0, n_max=9, wmax=10):
    n = draw(st.integers(n_min, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    weight = draw(st.lists(st.integers(1, wmax), min_size=n, max_size=n))
    return from_edges(n, [e for e, keep in zip(pairs, mask) if keep], weight)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return from_edges(3, [(0, 1), (1, 2), (0, 2)], [2, 3, 5])


@pytest.fixture
def star():
    # center 0, leaves 1 and 2
    return from_edges(3, [(0, 1), (0, 2)], [1, 1, 1])


@pytest.fixture
def edgeless3():
    return from_edges(3, [], [3, 2, 1])
