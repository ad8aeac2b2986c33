import random

import pytest

from dynst.graph import WeightedGraph


def random_connected_graph(n: int, m: int, seed: int, lo: float = 1.0, hi: float = 10.0) -> WeightedGraph:
    """Random spanning tree plus extra random edges, real-valued weights."""
    rng = random.Random(seed)
    edges = {}
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges[(min(u, v), max(u, v))] = rng.uniform(lo, hi)
    m = min(m, n * (n - 1) // 2)
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.setdefault((min(u, v), max(u, v)), rng.uniform(lo, hi))
    return WeightedGraph(n, [(u, v, w) for (u, v), w in sorted(edges.items())])


@pytest.fixture
def small_graph():
    return random_connected_graph(12, 24, seed=3)
