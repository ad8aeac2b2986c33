"""Bipartite emulators and the Steiner tree maintained on top of them.

The emulator has the original vertices V = 0..n-1 and one auxiliary
vertex n + w for every w in V. Vertex v is joined to n + w with weight
d(v, w) for every w in the bunch B(v); since v is in its own bunch this
includes the zero-weight edge to its copy n + v. Two-hop distances over a
shared auxiliary vertex stretch true distances by at most 2l - 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from dynst.errors import AlreadyTerminal, DisconnectedError, DomainError, EmptyTerminalSet, NotATerminal
from dynst.graph import Tree, WeightedGraph
from dynst.msf import make_msf
from dynst.oracle.general import build_bunches


@dataclass
class BipartiteEmulator:
    n: int
    alpha: float
    adj: list[dict[int, float]]  # v -> {auxiliary id: weight}

    def edges(self) -> list[tuple[int, int, float]]:
        return [(v, x, w) for v in range(self.n) for x, w in self.adj[v].items()]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def distance(self, u: int, w: int) -> float:
        if not (0 <= u < self.n and 0 <= w < self.n):
            raise DomainError(f"vertex out of range: {u}, {w}")
        if u == w:
            return 0.0
        a, b = self.adj[u], self.adj[w]
        if len(a) > len(b):
            a, b = b, a
        return min((a[x] + b[x] for x in a if x in b), default=math.inf)


def build_emulator(g: WeightedGraph, l: int, seed: int = 0) -> BipartiteEmulator:
    if not g.is_connected():
        raise DisconnectedError("emulators need a connected graph")
    _, bunches = build_bunches(g, l, seed)
    adj = [{g.n + w: d for w, d in sorted(b.items())} for b in bunches]
    return BipartiteEmulator(g.n, float(2 * l - 1), adj)


def prune_leaves(n: int, edges: list[tuple[int, int, float]]) -> list[tuple[int, int, float]]:
    """Repeatedly drop auxiliary (id >= n) leaves until every leaf is original."""
    adj: dict[int, dict[int, int]] = {}
    for i, (a, b, _) in enumerate(edges):
        adj.setdefault(a, {})[b] = i
        adj.setdefault(b, {})[a] = i
    alive = set(range(len(edges)))
    stack = [x for x in adj if x >= n and len(adj[x]) == 1]
    while stack:
        x = stack.pop()
        if len(adj[x]) != 1:
            continue
        (y, i), = adj[x].items()
        alive.discard(i)
        del adj[x][y]
        del adj[y][x]
        if y >= n and len(adj[y]) == 1:
            stack.append(y)
    return [edges[i] for i in sorted(alive)]


class EmulatorSteiner:
    """Dynamic forest over the emulator edges of the current terminals."""

    def __init__(self, emulator: BipartiteEmulator, msf: str = "dynamic", seed: int = 0):
        self.emulator = emulator
        self.n = emulator.n
        self.msf = make_msf(2 * emulator.n, msf, seed=seed)
        self.terminals: set[int] = set()
        self.edge_ids: dict[int, list[int]] = {}
        self.refs: dict[int, int] = {}
        self.edge_ops = 0
        self.replacements = 0

    def add(self, v: int) -> None:
        if v in self.terminals:
            raise AlreadyTerminal(f"{v} is already a terminal")
        ids = []
        for x, w in self.emulator.adj[v].items():
            ids.append(self.msf.insert(v, x, w).edge)
            self.refs[x] = self.refs.get(x, 0) + 1
            self.edge_ops += 1
        self.edge_ids[v] = ids
        self.terminals.add(v)

    def remove(self, v: int) -> None:
        if v not in self.terminals:
            raise NotATerminal(f"{v} is not a terminal")
        for eid in self.edge_ids.pop(v):
            x = self.msf.edge(eid)[1]
            self.msf.delete(eid)
            self.refs[x] -= 1
            if not self.refs[x]:
                del self.refs[x]
            self.edge_ops += 1
        self.terminals.discard(v)

    def forest_edges(self) -> list[tuple[int, int, float]]:
        out = []
        for eid in sorted(self.msf.forest()):
            a, b, w, _ = self.msf.edge(eid)
            out.append((a, b, w))
        return out

    def current_tree(self) -> Tree:
        if not self.terminals:
            raise EmptyTerminalSet("no terminals")
        root = min(self.terminals)
        comp = set(self.msf.component_vertices(root))
        edges = [e for e in self.forest_edges() if e[0] in comp]
        kept = prune_leaves(self.n, edges)
        verts = sorted({x for a, b, _ in kept for x in (a, b)} | {root})
        return Tree(vertices=verts, edges=kept)

    def cost(self) -> float:
        if not self.terminals:
            return 0.0
        return self.current_tree().cost

    def tree_edges(self) -> list[tuple[int, int, float]]:
        if not self.terminals:
            return []
        return sorted(self.current_tree().edges)
