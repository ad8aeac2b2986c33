"""Auxiliary graph H whose minimum spanning forest is the maintained tree.

H holds the tree edges, the piece edges between tree vertices and the
edges offered while reconnecting or replacing. After every step the
offered edges that did not make it into the forest are deleted again, so
H stays equal to the tree plus piece edges. The forest is mirrored into a
path-maximum forest and into one vertex-color state per level, where the
state of level j links exactly the tree edges of level at most j.
"""
from __future__ import annotations

import math
from typing import Callable

from dynst.changes import Change
from dynst.errors import EngineError
from dynst.forest.linkcut import PathForest
from dynst.msf import Delta, make_msf
from dynst.oracle.colors import FULL, ColorState
from dynst.oracle.generic import GenericOracle, NearMetricView

PIECE = "piece"
OFFER = "offer"


class AuxForest:
    def __init__(self, oracle: GenericOracle, view: NearMetricView, levels: list[int],
                 edge_level: Callable[[float], int], msf: str = "dynamic", seed: int = 0):
        self.oracle = oracle
        self.view = view
        self.n = oracle.n
        self.edge_level = edge_level
        self.msf = make_msf(self.n, msf, seed=seed)
        self.paths = PathForest(self.n)
        self.states = {j: ColorState(oracle, FULL, seed=seed + j) for j in levels}
        self.top = self.states[max(levels)]
        self.vertices: set[int] = set()
        self.tree: dict[int, tuple[int, int, float, int]] = {}  # eid -> (u, v, w, level)
        self.tree_adj: dict[int, dict[int, int]] = {}
        self.kind: dict[int, str] = {}
        self.incident: dict[int, set[int]] = {}
        self.pieces: dict[tuple[int, int], int] = {}

    # -- vertices ---------------------------------------------------------

    def activate(self, v: int) -> None:
        self.vertices.add(v)
        self.tree_adj.setdefault(v, {})
        for st in self.states.values():
            st.activate(st.color_of(v))

    def add_piece_edges(self, v: int) -> None:
        for w in self.oracle.piece_neighbors(v):
            if w in self.vertices and (min(v, w), max(v, w)) not in self.pieces:
                eid = self.insert(v, w, self.view.d(v, w), PIECE)
                self.pieces[(min(v, w), max(v, w))] = eid

    # -- H edges ----------------------------------------------------------

    def insert(self, u: int, v: int, w: float, kind: str = OFFER) -> int:
        delta = self.msf.insert(u, v, w)
        eid = delta.edge
        self.kind[eid] = kind
        self.incident.setdefault(u, set()).add(eid)
        self.incident.setdefault(v, set()).add(eid)
        self._apply(delta)
        return eid

    def delete(self, eid: int) -> Delta:
        u, v = self.msf.edge(eid)[:2]
        delta = self.msf.delete(eid)
        kind = self.kind.pop(eid)
        if kind == PIECE:
            del self.pieces[(min(u, v), max(u, v))]
        self.incident[u].discard(eid)
        self.incident[v].discard(eid)
        self._apply(delta)
        return delta

    def cleanup(self) -> None:
        """Delete offered edges that lost to the forest."""
        for eid in [e for e, k in self.kind.items() if k == OFFER and e not in self.tree]:
            self.delete(eid)

    def _apply(self, delta: Delta) -> None:
        for eid in delta.removed:
            if eid in self.tree:
                self._unmirror(eid)
        for eid in delta.added:
            self._mirror(eid)

    def _mirror(self, eid: int) -> None:
        u, v, w, ts = self.msf.edge(eid)
        if u not in self.vertices or v not in self.vertices:
            raise EngineError(f"forest edge ({u}, {v}) leaves the tree vertices")
        lvl = self.edge_level(w)
        self.tree[eid] = (u, v, w, lvl)
        self.tree_adj[u][v] = eid
        self.tree_adj[v][u] = eid
        self.paths.link(u, v, w, ts, edge_id=eid)
        for j, st in self.states.items():
            if lvl <= j:
                st.merge(st.color_of(u), st.color_of(v), u, v)

    def _unmirror(self, eid: int) -> None:
        u, v, _, lvl = self.tree.pop(eid)
        del self.tree_adj[u][v]
        del self.tree_adj[v][u]
        self.paths.cut(eid)
        for j, st in self.states.items():
            if lvl <= j:
                st.split(st.color_of(u), u, v)

    # -- tree views -------------------------------------------------------

    def degree(self, v: int) -> int:
        return len(self.tree_adj.get(v, ()))

    def tree_edges(self) -> list[tuple[int, int, float]]:
        return sorted((min(u, v), max(u, v), w) for u, v, w, _ in self.tree.values())

    def cost(self) -> float:
        return math.fsum(w for _, _, w, _ in self.tree.values())

    def oracle_ops(self) -> int:
        return sum(st.ops for st in self.states.values())

    # -- vertex removal ---------------------------------------------------

    def drop_vertex(self, x: int, log: list[Change]) -> list[int]:
        """Take x out of the tree and reconnect the remaining parts."""
        nbrs = sorted(self.tree_adj[x])
        for y in nbrs:
            self._unmirror(self.tree_adj[x][y])
        for st in self.states.values():
            st.deactivate(st.color_of(x))
        self.vertices.discard(x)
        log.append(Change("drop", x))
        if len(nbrs) > 1:
            top = self.top
            colors = sorted({top.color_of(y) for y in nbrs})
            offers = set()
            for a, b, _ in top.portal_reconnect_mst(colors):
                offers.add((min(a, b), max(a, b)))
            before = set(self.tree)
            for a, b in sorted(offers, key=lambda e: self.view.key(*e)):
                self.insert(a, b, self.view.d(a, b))
            self._delete_incident(x)
            for eid in sorted(set(self.tree) - before, key=lambda e: self.msf.edge(e)[3]):
                u, v, w, _ = self.tree[eid]
                log.append(Change("reconnect", min(u, v), max(u, v), w))
        else:
            self._delete_incident(x)
        self.tree_adj.pop(x, None)
        self.cleanup()
        return nbrs

    def _delete_incident(self, x: int) -> None:
        # non-tree edges first, so none of them is promoted into the forest
        inc = self.incident.get(x, set())
        for eid in sorted(inc, key=lambda e: (e in self.msf.forest(), e)):
            self.delete(eid)

    def remove_eta(self, x: int, terminals: set[int], eta: int, log: list[Change]) -> None:
        if x in terminals or x not in self.vertices or self.degree(x) > eta:
            return
        nbrs = self.drop_vertex(x, log)
        for y in nbrs:
            self.remove_eta(y, terminals, eta, log)
