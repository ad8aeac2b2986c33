"""Static Steiner queries over an oracle and the nonrearrangeable online tree."""
from __future__ import annotations

import math
from typing import Iterable

from dynst.changes import Change
from dynst.errors import AlreadyTerminal, DisconnectedError, DomainError
from dynst.graph import Tree
from dynst.oracle.colors import INCREMENTAL, ColorState
from dynst.oracle.generic import GenericOracle, NearMetricView
from dynst.oracle.heap import IndexedHeap


def query_steiner(oracle: GenericOracle, terminals: Iterable[int], view: NearMetricView | None = None) -> Tree:
    """MST of the oracle distances over the terminals, grown by Prim.

    Piece distances: every outside terminal keeps its best piece distance
    to the tree in a global heap. Portal distances: every portal keeps the
    distance to its nearest tree vertex and a heap of outside terminals in
    its cluster; a second global heap holds the best sum per portal.
    """
    view = view or NearMetricView(oracle)
    s = sorted(set(terminals))
    for v in s:
        if not 0 <= v < oracle.n:
            raise DomainError(f"vertex {v} out of range")
    if len(s) <= 1:
        return Tree(vertices=s, edges=[])
    outside = set(s)
    piece_best = IndexedHeap()  # item w -> (r, u, w)
    near_tree: dict[int, tuple[float, int]] = {}
    portal_heaps: dict[int, IndexedHeap] = {}
    portal_best = IndexedHeap()  # item p -> (sum, u, w)
    for v in s:
        for p, d in oracle.portal_dists(v).items():
            portal_heaps.setdefault(p, IndexedHeap()).push(v, (d, v))

    def refresh(p: int) -> None:
        h = portal_heaps.get(p)
        top = h.peek() if h else None
        if top is None or p not in near_tree:
            portal_best.discard(p)
            return
        (dw, w), _ = top
        du, u = near_tree[p]
        portal_best.push(p, (du + dw, u, w))

    def attach(u: int) -> None:
        outside.discard(u)
        piece_best.discard(u)
        for p, d in oracle.portal_dists(u).items():
            portal_heaps[p].discard(u)
            cur = near_tree.get(p)
            if cur is None or (d, u) < cur:
                near_tree[p] = (d, u)
            refresh(p)
        for w, r in oracle.piece_neighbors(u).items():
            if w in outside:
                cur = piece_best.get(w)
                if cur is None or (r, u, w) < cur:
                    piece_best.push(w, (r, u, w))

    edges = []
    attach(s[0])
    while outside:
        a, b = piece_best.peek(), portal_best.peek()
        cands = [x[0] for x in (a, b) if x is not None]
        if not cands:
            raise DisconnectedError(f"terminals {sorted(outside)} cannot reach the tree")
        dist, u, w = min(cands)
        if not math.isfinite(dist):
            raise DisconnectedError(f"terminal {w} cannot reach the tree")
        edges.append((u, w, view.d(u, w)))
        attach(w)
    return Tree(vertices=s, edges=edges)


class OnlineGreedyEngine:
    """Attaches each new terminal to an approximately nearest earlier one.

    Every terminal shares one active color; an addition costs one distance
    query and one merge. Earlier edges are never changed.
    """

    def __init__(self, oracle: GenericOracle):
        self.oracle = oracle
        self.view = NearMetricView(oracle)
        self.colors = ColorState(oracle, INCREMENTAL)
        self.terminals: set[int] = set()
        self.edges: list[tuple[int, int, float]] = []
        self.replacements = 0
        self._color: int | None = None

    def add(self, v: int) -> list[Change]:
        if v in self.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        cs = self.colors
        if self._color is None:
            self.terminals.add(v)
            self._color = cs.color_of(v)
            cs.activate(self._color)
            return [Change("connect", v)]
        found = cs.distance(v, self._color)
        if found is None or not math.isfinite(found[0]):
            raise DisconnectedError(f"{v} cannot reach the terminals")
        _, w = found
        cs.activate(cs.color_of(v))
        self._color = cs.merge(self._color, cs.color_of(v))
        self.terminals.add(v)
        weight = self.view.d(v, w)
        self.edges.append((v, w, weight))
        return [Change("connect", v, w, weight)]

    def tree_edges(self) -> list[tuple[int, int, float]]:
        return list(self.edges)

    def cost(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    @property
    def oracle_ops(self) -> int:
        return self.colors.ops
