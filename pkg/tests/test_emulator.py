import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from dynst.emulator import EmulatorSteiner, build_emulator, prune_leaves
from dynst.errors import AlreadyTerminal, DisconnectedError, DomainError, EmptyTerminalSet, NotATerminal
from dynst.graph import WeightedGraph, exact_steiner_cost, mst
from dynst.msf import kruskal_forest

from conftest import random_connected_graph


def p3():
    return WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])


def two_hop(em, u, w):
    best = float("inf")
    for x, a in em.adj[u].items():
        for y, b in em.adj[w].items():
            if x == y:
                best = min(best, a + b)
    return best


def scratch_tree(st_, terminals):
    """Kruskal from scratch over the live edges, terminal component, pruned.

    The live edge set must be exactly B[S + Gamma(S)]; ties between equal
    weights are broken by the insertion timestamps recorded with the edges.
    """
    em = st_.emulator
    live = st_.msf.edges()
    want = sorted((v, x, w) for v in terminals for x, w in em.adj[v].items())
    assert sorted(e[:3] for e in live.values()) == want
    forest = [live[i][:3] for i in sorted(kruskal_forest(2 * em.n, live))]
    root = min(terminals)
    adj = {}
    for a, b, _ in forest:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    comp, stack = {root}, [root]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y not in comp:
                comp.add(y)
                stack.append(y)
    return prune_leaves(em.n, [e for e in forest if e[0] in comp])


def test_l1_is_exact():
    g = random_connected_graph(15, 30, seed=1)
    em = build_emulator(g, 1, seed=0)
    closure = g.closure
    assert em.alpha == 1.0
    for u, w in itertools.combinations(range(15), 2):
        assert em.distance(u, w) == pytest.approx(closure[u, w])


def test_self_distance_uses_copy_edge():
    g = random_connected_graph(10, 20, seed=2)
    em = build_emulator(g, 2, seed=2)
    for v in range(10):
        assert em.adj[v][10 + v] == 0.0
        assert em.distance(v, v) == 0.0
        assert em.degree(v) == len(em.adj[v])


def test_p3_distance():
    em = build_emulator(p3(), 1)
    assert em.distance(0, 2) == 2.0
    with pytest.raises(DomainError):
        em.distance(0, 3)


def test_disconnected_graph_rejected():
    with pytest.raises(DisconnectedError):
        build_emulator(WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)]), 2)


@pytest.mark.parametrize("seed", range(30))
def test_l2_stretch_envelope(seed):
    g = random_connected_graph(60, 150, seed=seed)
    em = build_emulator(g, 2, seed=seed)
    closure = g.closure
    for u, w in itertools.combinations(range(60), 2):
        d = em.distance(u, w)
        assert closure[u, w] * (1 - 1e-9) <= d <= 3.0 * closure[u, w] * (1 + 1e-9)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), l=st.integers(1, 3))
def test_distance_matches_two_hop_enumeration(seed, l):
    g = random_connected_graph(14, 30, seed=seed)
    em = build_emulator(g, l, seed=seed)
    for u, w in itertools.combinations(range(14), 2):
        assert em.distance(u, w) == two_hop(em, u, w)


def test_single_terminal():
    em = build_emulator(p3(), 2, seed=0)
    st_ = EmulatorSteiner(em)
    st_.add(1)
    assert (1, 4, 0.0) in st_.forest_edges()
    assert st_.tree_edges() == [] and st_.cost() == 0.0
    with pytest.raises(AlreadyTerminal):
        st_.add(1)
    with pytest.raises(NotATerminal):
        st_.remove(0)


def test_empty_tree_raises():
    st_ = EmulatorSteiner(build_emulator(p3(), 1))
    with pytest.raises(EmptyTerminalSet):
        st_.current_tree()


def test_p3_pruned_cost():
    st_ = EmulatorSteiner(build_emulator(p3(), 1))
    st_.add(0)
    st_.add(2)
    assert st_.cost() == 2.0


def test_add_remove_restores_forest():
    g = random_connected_graph(20, 40, seed=3)
    st_ = EmulatorSteiner(build_emulator(g, 2, seed=3))
    for v in [0, 4, 9]:
        st_.add(v)
    before = st_.forest_edges()
    st_.add(15)
    st_.remove(15)
    assert st_.forest_edges() == before


def test_trace_matches_scratch_msf():
    g = random_connected_graph(30, 70, seed=4)
    em = build_emulator(g, 2, seed=4)
    st_ = EmulatorSteiner(em)
    rng = random.Random(4)
    live = set()
    for _ in range(200):
        if live and (rng.random() < 0.4 or len(live) == 30):
            v = rng.choice(sorted(live))
            live.discard(v)
            st_.remove(v)
        else:
            v = rng.choice([x for x in range(30) if x not in live])
            live.add(v)
            st_.add(v)
        if live:
            want = scratch_tree(st_, live)
            assert st_.cost() == pytest.approx(sum(w for _, _, w in want), abs=1e-9)
            assert st_.tree_edges() == sorted(want)


def test_pruned_cost_within_twice_mst():
    for seed in range(5):
        g = random_connected_graph(40, 100, seed=seed)
        em = build_emulator(g, 2, seed=seed)
        s = random.Random(seed).sample(range(40), 8)
        st_ = EmulatorSteiner(em)
        for v in s:
            st_.add(v)
        assert st_.cost() <= 2.0 * mst(s, em.distance).cost * (1 + 1e-9)


@pytest.mark.parametrize("seed", range(30))
def test_end_to_end_ratio(seed):
    g = random_connected_graph(40, 100, seed=seed)
    em = build_emulator(g, 2, seed=seed)
    s = random.Random(seed).sample(range(40), 6)
    st_ = EmulatorSteiner(em)
    for v in s:
        st_.add(v)
    assert st_.cost() <= 12.0 * exact_steiner_cost(g, s) * (1 + 1e-9)


def test_prune_is_order_independent():
    rng = random.Random(0)
    for _ in range(20):
        n = 8
        edges = []
        for i in range(1, 14):
            a = rng.randrange(i)
            edges.append((a, i, float(rng.randint(1, 5))))
        # relabel so ids >= n are auxiliary
        shuffled = edges[:]
        rng.shuffle(shuffled)
        assert sorted(prune_leaves(n, edges)) == sorted(prune_leaves(n, shuffled))
        kept = prune_leaves(n, edges)
        deg = {}
        for a, b, _ in kept:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        assert all(x < n for x, d in deg.items() if d == 1)
