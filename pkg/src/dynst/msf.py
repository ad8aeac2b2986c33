"""Fully dynamic minimum spanning forest.

DynMsf keeps the forest in a link-cut tree (heaviest edge on a cycle) and
an Euler-tour forest (component sizes, members, weights). A deleted tree
edge is replaced by the lightest non-tree edge leaving the smaller of the
two halves. KruskalMsf recomputes the forest from scratch after every
update; it is the reference the dynamic version is tested against and can
be selected in its place.

Edges are ordered by (weight, timestamp, edge id), so an older edge is
lighter than a newer edge of equal weight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from dynst.errors import DomainError, NoSuchEdge
from dynst.forest.ett import EulerTourForest
from dynst.forest.linkcut import PathForest


@dataclass
class Delta:
    added: list[int] = field(default_factory=list)
    removed: list[int] = field(default_factory=list)
    edge: int | None = None

    def __bool__(self) -> bool:
        return bool(self.added or self.removed)


def kruskal_forest(n: int, edges: dict[int, tuple[int, int, float, int]]) -> set[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = set()
    for eid in sorted(edges, key=lambda e: (edges[e][2], edges[e][3], e)):
        u, v = edges[eid][0], edges[eid][1]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            out.add(eid)
    return out


class _MsfBase:
    def __init__(self, n: int):
        self.n = n
        self._edges: dict[int, tuple[int, int, float, int]] = {}
        self._next_id = 0
        self._clock = 0

    def _new_edge(self, u: int, v: int, w: float, timestamp: int | None) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise DomainError(f"edge ({u}, {v}) out of range")
        if u == v:
            raise DomainError(f"self-loop at {u}")
        w = float(w)
        if math.isnan(w) or w < 0 or math.isinf(w):
            raise DomainError(f"bad weight {w!r}")
        if timestamp is None:
            timestamp = self._clock + 1
        elif timestamp <= self._clock:
            raise DomainError(f"timestamp {timestamp} is not newer than {self._clock}")
        self._clock = timestamp
        eid = self._next_id
        self._next_id += 1
        self._edges[eid] = (u, v, w, timestamp)
        return eid

    def _key(self, eid: int):
        rec = self._edges[eid]
        return rec[2], rec[3], eid

    def edge(self, eid: int) -> tuple[int, int, float, int]:
        try:
            return self._edges[eid]
        except KeyError:
            raise NoSuchEdge(f"no edge {eid}") from None

    def edges(self) -> dict[int, tuple[int, int, float, int]]:
        return dict(self._edges)

    def __contains__(self, eid: int) -> bool:
        return eid in self._edges

    def __len__(self) -> int:
        return len(self._edges)

    @property
    def clock(self) -> int:
        return self._clock


class DynMsf(_MsfBase):
    def __init__(self, n: int, seed: int = 0):
        super().__init__(n)
        self._lct = PathForest(n)
        self._ett = EulerTourForest(n, seed=seed)
        self._tree: set[int] = set()
        self._nontree: list[set[int]] = [set() for _ in range(n)]

    def insert(self, u: int, v: int, w: float, timestamp: int | None = None) -> Delta:
        eid = self._new_edge(u, v, w, timestamp)
        if not self._ett.connected(u, v):
            self._link(eid)
            return Delta(added=[eid], edge=eid)
        fid, _ = self._lct.path_max_edge(u, v)
        if self._key(eid) < self._key(fid):
            self._unlink(fid)
            self._park(fid)
            self._link(eid)
            return Delta(added=[eid], removed=[fid], edge=eid)
        self._park(eid)
        return Delta(edge=eid)

    def delete(self, eid: int) -> Delta:
        if eid not in self._edges:
            raise NoSuchEdge(f"no edge {eid}")
        u, v = self._edges[eid][0], self._edges[eid][1]
        if eid not in self._tree:
            self._nontree[u].discard(eid)
            self._nontree[v].discard(eid)
            del self._edges[eid]
            return Delta(edge=eid)
        self._unlink(eid)
        del self._edges[eid]
        delta = Delta(removed=[eid], edge=eid)
        small = u if self._ett.component_size(u) <= self._ett.component_size(v) else v
        side = set(self._ett.component_vertices(small))
        best = None
        for x in side:
            for fid in self._nontree[x]:
                a, b = self._edges[fid][0], self._edges[fid][1]
                if (a in side) != (b in side):
                    if best is None or self._key(fid) < self._key(best):
                        best = fid
        if best is not None:
            a, b = self._edges[best][0], self._edges[best][1]
            self._nontree[a].discard(best)
            self._nontree[b].discard(best)
            self._link(best)
            delta.added.append(best)
        return delta

    def _link(self, eid: int) -> None:
        u, v, w, ts = self._edges[eid]
        self._lct.link(u, v, w, ts, edge_id=eid)
        self._ett.link(u, v, w)
        self._tree.add(eid)

    def _unlink(self, eid: int) -> None:
        u, v = self._edges[eid][0], self._edges[eid][1]
        self._lct.cut(eid)
        self._ett.cut(u, v)
        self._tree.discard(eid)

    def _park(self, eid: int) -> None:
        u, v = self._edges[eid][0], self._edges[eid][1]
        self._nontree[u].add(eid)
        self._nontree[v].add(eid)

    def forest(self) -> set[int]:
        return set(self._tree)

    def in_forest(self, eid: int) -> bool:
        return eid in self._tree

    def connected(self, u: int, v: int) -> bool:
        return self._ett.connected(u, v)

    def component_weight(self, v: int) -> float:
        if not 0 <= v < self.n:
            raise DomainError(f"vertex {v} out of range")
        return self._ett.component_weight(v)

    def component_vertices(self, v: int) -> list[int]:
        return sorted(self._ett.component_vertices(v))


class KruskalMsf(_MsfBase):
    """Recompute-from-scratch forest with the DynMsf interface."""

    def __init__(self, n: int, seed: int = 0):
        super().__init__(n)
        self._tree: set[int] = set()

    def _refresh(self, eid: int) -> Delta:
        new = kruskal_forest(self.n, self._edges)
        delta = Delta(added=sorted(new - self._tree), removed=sorted(self._tree - new), edge=eid)
        self._tree = new
        return delta

    def insert(self, u: int, v: int, w: float, timestamp: int | None = None) -> Delta:
        eid = self._new_edge(u, v, w, timestamp)
        return self._refresh(eid)

    def delete(self, eid: int) -> Delta:
        if eid not in self._edges:
            raise NoSuchEdge(f"no edge {eid}")
        del self._edges[eid]
        delta = self._refresh(eid)
        return delta

    def forest(self) -> set[int]:
        return set(self._tree)

    def in_forest(self, eid: int) -> bool:
        return eid in self._tree

    def _component(self, v: int) -> set[int]:
        adj: dict[int, list[int]] = {}
        for eid in self._tree:
            a, b = self._edges[eid][0], self._edges[eid][1]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        seen, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def connected(self, u: int, v: int) -> bool:
        return v in self._component(u)

    def component_weight(self, v: int) -> float:
        if not 0 <= v < self.n:
            raise DomainError(f"vertex {v} out of range")
        comp = self._component(v)
        return math.fsum(self._edges[e][2] for e in self._tree if self._edges[e][0] in comp)

    def component_vertices(self, v: int) -> list[int]:
        return sorted(self._component(v))


def make_msf(n: int, engine: str = "dynamic", seed: int = 0):
    if engine == "dynamic":
        return DynMsf(n, seed=seed)
    if engine == "kruskal":
        return KruskalMsf(n, seed=seed)
    raise DomainError(f"unknown msf engine {engine!r}")
