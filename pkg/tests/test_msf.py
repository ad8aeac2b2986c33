import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from dynst.errors import DomainError, NoSuchEdge
from dynst.msf import DynMsf, KruskalMsf, kruskal_forest, make_msf


def test_triangle_example():
    m = DynMsf(3)
    a = m.insert(0, 1, 1.0).edge
    b = m.insert(1, 2, 2.0).edge
    d = m.insert(0, 2, 3.0)
    c = d.edge
    assert not d
    assert m.forest() == {a, b}
    delta = m.delete(a)
    assert delta.removed == [a] and delta.added == [c]
    assert m.forest() == {b, c}
    assert m.component_weight(0) == pytest.approx(5.0)


def test_equal_weights_prefer_older_edge():
    m = DynMsf(3)
    a = m.insert(0, 1, 1.0).edge
    b = m.insert(1, 2, 1.0).edge
    c = m.insert(0, 2, 1.0).edge
    assert m.forest() == {a, b}
    assert m.delete(b).added == [c]


def test_errors():
    m = DynMsf(3)
    with pytest.raises(DomainError):
        m.insert(0, 0, 1.0)
    with pytest.raises(DomainError):
        m.insert(0, 1, -1.0)
    with pytest.raises(DomainError):
        m.insert(0, 5, 1.0)
    with pytest.raises(NoSuchEdge):
        m.delete(3)
    m.insert(0, 1, 1.0, timestamp=10)
    with pytest.raises(DomainError):
        m.insert(1, 2, 1.0, timestamp=10)
    with pytest.raises(DomainError):
        make_msf(3, "nope")


def test_zero_weight_edges_are_allowed():
    m = DynMsf(3)
    m.insert(0, 1, 0.0)
    m.insert(1, 2, 2.0)
    assert m.component_weight(2) == 2.0


def run_differential(n, ops, seed, weights=None, check_every=1):
    rng = random.Random(seed)
    dyn, ref = DynMsf(n, seed=seed), KruskalMsf(n)
    live = []
    for step in range(ops):
        if rng.random() < 0.55 or not live:
            u, v = rng.sample(range(n), 2)
            w = float(rng.randint(1, 5)) if weights is None else weights(rng)
            d1 = dyn.insert(u, v, w)
            d2 = ref.insert(u, v, w, timestamp=dyn.clock)
            assert d1.edge == d2.edge
            live.append(d1.edge)
        else:
            e = live.pop(rng.randrange(len(live)))
            d1 = dyn.delete(e)
            d2 = ref.delete(e)
        assert sorted(d1.added) == d2.added and sorted(d1.removed) == d2.removed
        if step % check_every == 0:
            assert dyn.forest() == ref.forest()
            v = rng.randrange(n)
            assert math.isclose(dyn.component_weight(v), ref.component_weight(v), abs_tol=1e-9)
    assert dyn.forest() == kruskal_forest(n, dyn.edges())


@pytest.mark.parametrize("seed", range(4))
def test_dynamic_matches_kruskal(seed):
    run_differential(30, 600, seed)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0, max_value=10**6))
def test_dynamic_matches_kruskal_property(n, seed):
    run_differential(n, 80, seed)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=2, max_value=20), st.integers(min_value=0, max_value=10**6))
def test_forest_weight_is_minimum(n, seed):
    # forest weight equals the Kruskal optimum for the surviving edge multiset
    rng = random.Random(seed)
    m = DynMsf(n)
    ids = [m.insert(*rng.sample(range(n), 2), rng.uniform(0.5, 3)).edge for _ in range(3 * n)]
    for e in rng.sample(ids, n):
        m.delete(e)
    total = sum(m.edge(e)[2] for e in m.forest())
    best = sum(m.edge(e)[2] for e in kruskal_forest(n, m.edges()))
    assert math.isclose(total, best, abs_tol=1e-9)
