"""Decremental Steiner tree: terminals are only removed."""
from __future__ import annotations

from typing import Iterable

from dynst.changes import Change
from dynst.errors import DisconnectedError, NotATerminal
from dynst.graph import WeightedGraph
from dynst.oracle.generic import GenericOracle, NearMetricView
from dynst.schemes import eta_for
from dynst.steiner.aux import AuxForest
from dynst.steiner.query import query_steiner


class DecrementalEngine:
    def __init__(self, g: WeightedGraph, oracle: GenericOracle, terminals: Iterable[int],
                 eps: float, msf: str = "dynamic", seed: int = 0):
        s = sorted(set(terminals))
        if not s:
            raise DisconnectedError("need at least one terminal")
        self.g = g
        self.oracle = oracle
        self.view = NearMetricView(oracle)
        self.eps = eps
        self.eta = eta_for(eps)
        self.terminals = set(s)
        self.replacements = 0
        tree = query_steiner(oracle, s, self.view)
        self.aux = AuxForest(oracle, self.view, [0], lambda w: 0, msf=msf, seed=seed)
        for v in s:
            self.aux.activate(v)
        for a, b, w in sorted(tree.edges, key=lambda e: self.view.key(e[0], e[1])):
            self.aux.insert(a, b, w)
        for v in s:
            self.aux.add_piece_edges(v)
        self.aux.cleanup()

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
