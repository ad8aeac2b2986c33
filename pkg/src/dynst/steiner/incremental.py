"""Incremental Steiner tree: terminals are only added.

Layer j links the tree edges of level at most j in an incremental
vertex-color state whose active colors hold the terminals. Only the
layers inside the current replacement window exist; a layer entering the
window is built from the current tree.
"""
from __future__ import annotations

import math

from dynst.changes import Change
from dynst.errors import AlreadyTerminal, DisconnectedError, EngineError
from dynst.forest.linkcut import PathForest
from dynst.graph import WeightedGraph
from dynst.oracle.colors import INCREMENTAL, ColorState
from dynst.oracle.generic import GenericOracle, NearMetricView
from dynst.steiner.levels import LevelIndex


class IncrementalEngine:
    def __init__(self, g: WeightedGraph, oracle: GenericOracle, tau: float):
        self.g = g
        self.oracle = oracle
        self.tau = tau
        self.sigma = tau / 2.0
        self.view = NearMetricView(oracle, self.sigma)
        self.levels = LevelIndex.for_graph(g, 1.0 + self.sigma, oracle.alpha)
        self.terminals: set[int] = set()
        self.replacements = 0
        self.paths = PathForest(g.n)
        self.tree: dict[int, tuple[int, int, float, int]] = {}  # eid -> (u, v, w, level)
        self.top = ColorState(oracle, INCREMENTAL)
        self.layers: dict[int, ColorState] = {}
        self.history = [0.0]
        self.layer_builds = 0
        self.last_window = range(0)
        self._age = 0
        self._retired_ops = 0
        self._cap = 10 * g.n * (1 + len(self.levels.levels()))

    def _link(self, u: int, v: int, w: float) -> int:
        self._age += 1
        eid = self.paths.link(u, v, w, self._age)
        self.tree[eid] = (u, v, w, self.levels.level(w))
        return eid

    def window(self) -> range:
        tm = max(self.history)
        if tm <= 0:
            return range(0)
        lv = self.levels
        lo = lv.bottom_level(tm, self.tau, self.view.mu, self.g.n)
        return range(max(lo, lv.lo), lv.tree_level(tm) + 1)

    def _sync_layers(self, window: range) -> None:
        for j in [j for j in self.layers if j not in window]:
            self._retired_ops += self.layers.pop(j).ops
        for j in window:
            if j not in self.layers:
                forest = [(u, v) for u, v, _, lvl in self.tree.values() if lvl <= j]
                st = ColorState(self.oracle, INCREMENTAL, forest=forest)
                for c in sorted({st.color_of(t) for t in self.terminals}):
                    st.activate(c)
                self.layers[j] = st
                self.layer_builds += 1

    def add(self, v: int) -> list[Change]:
        if v in self.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        log: list[Change] = []
        top = self.top
        if not self.terminals:
            self.terminals.add(v)
            top.activate(top.color_of(v))
            for st in self.layers.values():
                st.activate(st.color_of(v))
            log.append(Change("connect", v))
            self.history.append(0.0)
            return log
        found = top.nearest(v, 1)
        if not found or not math.isfinite(found[0][0]):
            raise DisconnectedError(f"{v} cannot reach the tree")
        u = found[0][2]
        w = self.view.d(v, u)
        lvl = self.levels.level(w)
        self._link(v, u, w)
        self.terminals.add(v)
        top.activate(top.color_of(v))
        top.merge(top.color_of(u), top.color_of(v))
        for j, st in self.layers.items():
            st.activate(st.color_of(v))
            if lvl <= j:
                st.merge(st.color_of(u), st.color_of(v))
        log.append(Change("connect", v, u, w, lvl))
        window = self.last_window = self.window()
        self._sync_layers(window)
        for j in window:
            self._find_replacements(v, j, log)
        self.history.append(self.cost())
        return log

    def _find_replacements(self, v: int, j: int, log: list[Change]) -> None:
        st = self.layers[j]
        for _ in range(self._cap):
            near = st.nearest(v, 2)
            if len(near) < 2:
                return
            t = near[1][2]
            w = self.view.d(v, t)
            lvl = self.levels.level(w)
            if lvl > j:
                return
            eid, _ = self.paths.path_max_edge(v, t)
            a, b, wo, lvl_old = self.tree.pop(eid)
            self.paths.cut(eid)
            self._link(v, t, w)
            for k, layer in self.layers.items():
                if lvl_old <= k:
                    continue
                if lvl <= k:
                    layer.merge(layer.color_of(v), layer.color_of(t))
            self.replacements += 1
            log.append(Change("replace", v, t, w, j, (min(a, b), max(a, b), wo)))
        raise EngineError(f"replacement search at level {j} did not settle")

    def tree_edges(self) -> list[tuple[int, int, float]]:
        return sorted((min(u, v), max(u, v), w) for u, v, w, _ in self.tree.values())

    def cost(self) -> float:
        return math.fsum(w for _, _, w, _ in self.tree.values())

    @property
    def oracle_ops(self) -> int:
        return self.top.ops + self._retired_ops + sum(st.ops for st in self.layers.values())
