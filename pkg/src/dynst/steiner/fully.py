"""Fully dynamic Steiner tree: one vertex-color state per level over H."""
from __future__ import annotations

from dynst.changes import Change
from dynst.errors import AlreadyTerminal, DisconnectedError, EngineError, NotATerminal
from dynst.graph import WeightedGraph
from dynst.oracle.generic import GenericOracle, NearMetricView
from dynst.schemes import eta_for
from dynst.steiner.aux import AuxForest
from dynst.steiner.levels import LevelIndex


class FullyDynamicEngine:
    def __init__(self, g: WeightedGraph, oracle: GenericOracle, tau: float, eps: float,
                 msf: str = "dynamic", seed: int = 0):
        self.g = g
        self.oracle = oracle
        self.tau = tau
        self.eps = eps
        self.eta = eta_for(eps)
        self.view = NearMetricView(oracle, tau)
        self.levels = LevelIndex.for_graph(g, 1.0 + tau, oracle.alpha)
        self.terminals: set[int] = set()
        self.replacements = 0
        self.aux = AuxForest(oracle, self.view, list(self.levels.levels()), self.levels.level,
                             msf=msf, seed=seed)
        self._cap = 10 * g.n * (1 + len(self.levels.levels()))

    def add(self, v: int) -> list[Change]:
        if v in self.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        aux = self.aux
        log: list[Change] = []
        if v in aux.vertices:
            self.terminals.add(v)
            log.append(Change("mark", v))
            return log
        if not aux.vertices:
            aux.activate(v)
            self.terminals.add(v)
            log.append(Change("connect", v))
            return log
        found = aux.top.nearest(v, 1)
        if not found:
            raise DisconnectedError(f"{v} cannot reach the tree")
        u = found[0][2]
        self.terminals.add(v)
        aux.activate(v)
        w = self.view.d(v, u)
        aux.insert(v, u, w)
        log.append(Change("connect", v, u, w, self.levels.level(w)))
        dropped: set[int] = set()
        for j in self.levels.levels():
            self._find_replacements(v, j, log, dropped)
        aux.cleanup()
        for x in sorted(dropped):
            aux.remove_eta(x, self.terminals, self.eta, log)
        aux.add_piece_edges(v)
        return log

    def _find_replacements(self, v: int, j: int, log: list[Change], dropped: set[int]) -> None:
        aux = self.aux
        st = aux.states[j]
        for _ in range(self._cap):
            near = st.nearest(v, 2)
            if len(near) < 2:
                return
            t = near[1][2]
            w = self.view.d(v, t)
            if self.levels.level(w) > j:
                return
            before = set(aux.tree)
            eid = aux.insert(v, t, w)
            gone = before - set(aux.tree)
            if eid not in aux.tree or len(gone) != 1:
                raise EngineError(f"offered edge ({v}, {t}) did not replace a tree edge")
            a, b, wo, _ = aux.msf.edge(gone.pop())
            dropped.update((a, b))
            self.replacements += 1
            log.append(Change("replace", v, t, w, j, (min(a, b), max(a, b), wo)))
        raise EngineError(f"replacement search at level {j} did not settle")

    def remove(self, v: int) -> list[Change]:
        if v not in self.terminals:
            raise NotATerminal(f"{v} is not a terminal")
        self.terminals.discard(v)
        log = [Change("unmark", v)]
        self.aux.remove_eta(v, self.terminals, self.eta, log)
        return log

    def tree_edges(self) -> list[tuple[int, int, float]]:
        return self.aux.tree_edges()

    def cost(self) -> float:
        return self.aux.cost()

    @property
    def oracle_ops(self) -> int:
        return self.aux.oracle_ops()
