import random

import pytest

from dynst.errors import AlreadyTerminal, DisconnectedError, NotATerminal
from dynst.graph import WeightedGraph, exact_steiner_cost, mst
from dynst.oracle.general import build_tz3
from dynst.oracle.generic import NearMetricView, exact_oracle
from dynst.schemes import (
    ReferenceDecremental,
    ReferenceFullyDynamic,
    ReferenceIncremental,
    SchemeTree,
    replacement_violations,
)
from dynst.steiner.decremental import DecrementalEngine
from dynst.steiner.fully import FullyDynamicEngine
from dynst.steiner.incremental import IncrementalEngine
from dynst.steiner.levels import LevelIndex
from dynst.steiner.query import OnlineGreedyEngine, query_steiner

from conftest import random_connected_graph


def mixed_trace(n, ops, seed, p_remove=0.4):
    rng = random.Random(seed)
    live, out = set(), []
    for _ in range(ops):
        if live and (rng.random() < p_remove or len(live) == n):
            v = rng.choice(sorted(live))
            live.discard(v)
            out.append(("remove", v))
        else:
            v = rng.choice([x for x in range(n) if x not in live])
            live.add(v)
            out.append(("add", v))
    return out


def components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return [find(v) for v in range(n)]


def same_partition(state, vertices, edges, n):
    comp = components(n, edges)
    for a in vertices:
        for b in vertices:
            if (comp[a] == comp[b]) != (state.color_of(a) == state.color_of(b)):
                return False
    return True


# -- static query and online greedy --------------------------------------


def test_query_singleton():
    g = random_connected_graph(10, 20, seed=0)
    t = query_steiner(exact_oracle(g), [4])
    assert t.edges == [] and t.vertices == [4]


def test_query_exact_equals_closure_mst():
    for seed in range(4):
        g = random_connected_graph(30, 70, seed=seed)
        s = random.Random(seed).sample(range(30), 9)
        t = query_steiner(exact_oracle(g), s)
        assert t.cost == pytest.approx(mst(s, g.closure).cost)


def test_query_tz3_within_six_opt():
    g = random_connected_graph(40, 100, seed=5)
    o = build_tz3(g, seed=5)
    for k in range(3):
        s = random.Random(k).sample(range(40), 7)
        assert query_steiner(o, s).cost <= 6.0 * exact_steiner_cost(g, s) * (1 + 1e-9)


def test_query_disconnected():
    g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(DisconnectedError):
        query_steiner(exact_oracle(g), [0, 2])


def test_online_greedy_counts_and_shape():
    g = random_connected_graph(30, 70, seed=1)
    eng = OnlineGreedyEngine(exact_oracle(g))
    order = random.Random(1).sample(range(30), 12)
    for i, v in enumerate(order):
        before = dict(eng.colors.counters)
        eng.add(v)
        if i:
            c = eng.colors.counters
            assert c["distance"] - before.get("distance", 0) == 1
            assert c["merge"] - before.get("merge", 0) == 1
    assert len(eng.tree_edges()) == len(order) - 1
    comp = components(30, [e[:2] for e in eng.tree_edges()])
    assert len({comp[v] for v in order}) == 1
    with pytest.raises(AlreadyTerminal):
        eng.add(order[0])


# -- decremental ---------------------------------------------------------


def test_dec_p3_shortcut():
    g = WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    eng = DecrementalEngine(g, exact_oracle(g), [0, 2], eps=0.25)
    assert eng.tree_edges() == [(0, 2, 2.0)]


def test_dec_tz3_init_matches_reference():
    g = random_connected_graph(60, 150, seed=2)
    o = build_tz3(g, seed=2)
    s = random.Random(2).sample(range(60), 10)
    eng = DecrementalEngine(g, o, s, eps=0.25)
    ref = ReferenceDecremental(NearMetricView(o), s, eps=0.25)
    assert eng.cost() == ref.cost()
    assert eng.tree_edges() == ref.tree_edges()


def test_dec_high_degree_vertex_is_only_unmarked():
    g = WeightedGraph(8, [(0, i, 1.0) for i in range(1, 8)])
    eng = DecrementalEngine(g, exact_oracle(g), range(8), eps=1.0)
    log = eng.remove(0)
    assert [c.kind for c in log] == ["unmark"]
    assert eng.cost() == 7.0
    with pytest.raises(NotATerminal):
        eng.remove(0)


@pytest.mark.parametrize("seed", range(3))
def test_dec_matches_reference(seed):
    g = random_connected_graph(50, 150, seed=seed)
    o = exact_oracle(g)
    rng = random.Random(seed)
    s = rng.sample(range(50), 25)
    eng = DecrementalEngine(g, o, s, eps=0.25)
    ref = ReferenceDecremental(NearMetricView(o), s, eps=0.25)
    for v in rng.sample(s, 25):
        eng.remove(v)
        ref.remove(v)
        assert eng.tree_edges() == ref.tree_edges()
        assert eng.cost() == ref.cost()
    assert eng.tree_edges() == []


# -- incremental ---------------------------------------------------------


def test_inc_c4_detour_replaced():
    g = WeightedGraph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 3.0)])
    eng = IncrementalEngine(g, exact_oracle(g), 0.2)
    for v in [0, 3, 1, 2]:
        eng.add(v)
    assert eng.cost() == 3.0
    assert [e[:2] for e in eng.tree_edges()] == [(0, 1), (1, 2), (2, 3)]
    assert eng.replacements >= 1


@pytest.mark.parametrize("seed", range(3))
def test_inc_matches_reference(seed):
    tau = 0.25
    g = random_connected_graph(50, 150, seed=seed)
    o = exact_oracle(g)
    eng = IncrementalEngine(g, o, tau)
    lv = LevelIndex.for_graph(g, 1 + tau / 2, o.alpha)
    ref = ReferenceIncremental(NearMetricView(o, tau / 2), tau, lv)
    for v in random.Random(seed).sample(range(50), 30):
        eng.add(v)
        ref.add(v)
        assert eng.tree_edges() == ref.tree_edges()
    assert eng.replacements == ref.replacements


def test_inc_replay_audit():
    # every replacement happens at a level inside the window and removes a
    # tree edge of a strictly higher level; discretized weights sit on the
    # (1 + sigma) grid, so the old edge is at least a factor 1 + sigma heavier
    tau = 0.25
    g = random_connected_graph(40, 100, seed=7)
    eng = IncrementalEngine(g, exact_oracle(g), tau)
    view = eng.view
    for v in random.Random(7).sample(range(40), 40):
        for c in eng.add(v):
            if c.kind != "replace":
                continue
            j = c.level
            lvl = eng.levels.level(c.weight)
            assert j in eng.last_window
            assert lvl == j or (j == eng.last_window.start and lvl <= j)
            assert eng.levels.level(c.old[2]) > j
            assert c.old[2] >= (1 + eng.sigma) * c.weight * (1 - 1e-9)
            assert view.d(c.u, c.v) == c.weight


def test_inc_layers_track_tree():
    tau = 0.25
    g = random_connected_graph(40, 100, seed=3)
    eng = IncrementalEngine(g, exact_oracle(g), tau)
    for v in random.Random(3).sample(range(40), 25):
        eng.add(v)
        verts = sorted(eng.terminals)
        for j, st in eng.layers.items():
            edges = [(a, b) for a, b, w, lvl in eng.tree.values() if lvl <= j]
            assert same_partition(st, verts, edges, 40)


# -- fully dynamic -------------------------------------------------------


def test_fd_add_remove_restores():
    g = random_connected_graph(30, 80, seed=4)
    eng = FullyDynamicEngine(g, exact_oracle(g), 0.25, 0.25)
    for v in [1, 7, 13, 22]:
        eng.add(v)
    before = eng.cost()
    eng.add(28)
    eng.remove(28)
    assert eng.cost() <= before * (1 + 1e-9)
    assert eng.terminals == {1, 7, 13, 22}


@pytest.mark.parametrize("eps", [0.25, 1.0])
def test_fd_matches_reference(eps):
    tau = 0.25
    g = random_connected_graph(50, 150, seed=11)
    o = exact_oracle(g)
    eng = FullyDynamicEngine(g, o, tau, eps)
    ref = ReferenceFullyDynamic(NearMetricView(o, tau), tau, eps)
    for op, v in mixed_trace(50, 200, seed=11):
        getattr(eng, op)(v)
        getattr(ref, op)(v)
        assert eng.tree_edges() == ref.tree_edges()
        assert eng.cost() == ref.cost()
    assert eng.replacements == ref.replacements


def test_fd_survives_exhaustive_scan():
    tau, eps = 0.25, 0.5
    g = random_connected_graph(25, 60, seed=6)
    o = exact_oracle(g)
    eng = FullyDynamicEngine(g, o, tau, eps)
    view = NearMetricView(o, tau)
    for op, v in mixed_trace(25, 80, seed=6):
        getattr(eng, op)(v)
        st = SchemeTree(view)
        for x in eng.aux.vertices:
            st.add_vertex(x)
        for a, b, _ in eng.tree_edges():
            st.add_edge(a, b)
        assert not replacement_violations(st, tau)
        for x in eng.aux.vertices:
            assert x in eng.terminals or eng.aux.degree(x) > eng.eta


def test_fd_h_holds_tree_and_piece_pairs():
    g = random_connected_graph(40, 100, seed=9)
    o = build_tz3(g, seed=9)
    eng = FullyDynamicEngine(g, o, 0.25, 0.25)
    for op, v in mixed_trace(40, 120, seed=9):
        getattr(eng, op)(v)
        aux = eng.aux
        verts = aux.vertices
        want = {(min(a, b), max(a, b)) for a in verts for b in o.piece_neighbors(a) if b in verts}
        assert set(aux.pieces) == want
        for eid, kind in aux.kind.items():
            assert kind == "piece" or eid in aux.tree


def test_fd_states_match_levels():
    g = random_connected_graph(30, 80, seed=12)
    eng = FullyDynamicEngine(g, build_tz3(g, seed=12), 0.25, 0.5)
    for op, v in mixed_trace(30, 90, seed=12):
        getattr(eng, op)(v)
        verts = sorted(eng.aux.vertices)
        for j, st in eng.aux.states.items():
            edges = [(a, b) for a, b, _, lvl in eng.aux.tree.values() if lvl <= j]
            assert same_partition(st, verts, edges, 30)
            assert sorted(st.active_colors()) == sorted({st.color_of(x) for x in verts})


def test_fd_kruskal_msf_agrees():
    g = random_connected_graph(30, 80, seed=13)
    o = exact_oracle(g)
    a = FullyDynamicEngine(g, o, 0.25, 0.25, msf="dynamic")
    b = FullyDynamicEngine(g, o, 0.25, 0.25, msf="kruskal")
    for op, v in mixed_trace(30, 80, seed=13):
        getattr(a, op)(v)
        getattr(b, op)(v)
        assert a.tree_edges() == b.tree_edges()
