"""Path-maximum queries on a dynamic forest.

PathForest is a splay-based link-cut tree where every forest edge is its
own node, so the heaviest edge on a path is a plain subtree maximum.
Edges compare by (weight, timestamp, edge id). NaivePathForest answers the
same queries by walking the tree and is kept for differential testing.
"""
from __future__ import annotations

from collections import deque

from dynst.errors import CycleError, DomainError, NoSuchEdge, NotConnected


class _LNode:
    __slots__ = ("ch0", "ch1", "p", "rev", "val", "mx")

    def __init__(self, val=None):
        self.ch0 = self.ch1 = self.p = None
        self.rev = False
        self.val = val
        self.mx = self if val is not None else None


def _is_root(x: _LNode) -> bool:
    p = x.p
    return p is None or (p.ch0 is not x and p.ch1 is not x)


def _push(x: _LNode) -> None:
    if x.rev:
        x.ch0, x.ch1 = x.ch1, x.ch0
        if x.ch0 is not None:
            x.ch0.rev = not x.ch0.rev
        if x.ch1 is not None:
            x.ch1.rev = not x.ch1.rev
        x.rev = False


def _pull(x: _LNode) -> None:
    best = x if x.val is not None else None
    for c in (x.ch0, x.ch1):
        if c is not None and c.mx is not None and (best is None or c.mx.val > best.val):
            best = c.mx
    x.mx = best


def _rotate(x: _LNode) -> None:
    p = x.p
    g = p.p
    if p.ch0 is x:
        b = x.ch1
        p.ch0 = b
        x.ch1 = p
    else:
        b = x.ch0
        p.ch1 = b
        x.ch0 = p
    if b is not None:
        b.p = p
    if g is not None:
        if g.ch0 is p:
            g.ch0 = x
        elif g.ch1 is p:
            g.ch1 = x
    x.p = g
    p.p = x
    _pull(p)
    _pull(x)


def _splay(x: _LNode) -> None:
    path = [x]
    y = x
    while not _is_root(y):
        y = y.p
        path.append(y)
    for node in reversed(path):
        _push(node)
    while not _is_root(x):
        p = x.p
        if not _is_root(p):
            g = p.p
            if (g.ch0 is p) == (p.ch0 is x):
                _rotate(p)
            else:
                _rotate(x)
        _rotate(x)


def _access(x: _LNode) -> None:
    last = None
    y = x
    while y is not None:
        _splay(y)
        y.ch1 = last
        _pull(y)
        last = y
        y = y.p
    _splay(x)


def _make_root(x: _LNode) -> None:
    _access(x)
    x.rev = not x.rev
    _push(x)


def _find_root(x: _LNode) -> _LNode:
    _access(x)
    while True:
        _push(x)
        if x.ch0 is None:
            break
        x = x.ch0
    _splay(x)
    return x


class PathForest:
    def __init__(self, n: int):
        self.n = n
        self._verts = [_LNode() for _ in range(n)]
        self._edges: dict[int, tuple[int, int, float, int, _LNode]] = {}
        self._next_id = 0

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise DomainError(f"vertex {x} out of range")

    def connected(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return True
        return _find_root(self._verts[u]) is _find_root(self._verts[v])

    def link(self, u: int, v: int, w: float, timestamp: int, edge_id: int | None = None) -> int:
        if u == v or self.connected(u, v):
            raise CycleError(f"{u} and {v} are already connected")
        if edge_id is None:
            edge_id = self._next_id
        elif edge_id in self._edges:
            raise DomainError(f"edge id {edge_id} in use")
        self._next_id = max(self._next_id, edge_id + 1)
        node = _LNode((w, timestamp, edge_id))
        a, b = self._verts[u], self._verts[v]
        _make_root(a)
        a.p = node
        _make_root(node)
        node.p = b
        self._edges[edge_id] = (u, v, w, timestamp, node)
        return edge_id

    def _cut_pair(self, x: _LNode, y: _LNode) -> None:
        _make_root(x)
        _access(y)
        # x is now the left child of y with nothing in between
        y.ch0 = None
        x.p = None
        _pull(y)

    def cut(self, edge_id: int) -> None:
        rec = self._edges.pop(edge_id, None)
        if rec is None:
            raise NoSuchEdge(f"no path-forest edge {edge_id}")
        u, v, _, _, node = rec
        self._cut_pair(self._verts[u], node)
        self._cut_pair(node, self._verts[v])

    def path_max_edge(self, u: int, v: int) -> tuple[int, float]:
        if u == v:
            raise DomainError("path between a vertex and itself has no edges")
        if not self.connected(u, v):
            raise NotConnected(f"{u} and {v} are in different trees")
        a, b = self._verts[u], self._verts[v]
        _make_root(a)
        _access(b)
        w, _, eid = b.mx.val
        return eid, w

    def edge(self, edge_id: int) -> tuple[int, int, float, int]:
        u, v, w, ts, _ = self._edges[edge_id]
        return u, v, w, ts

    def edges(self) -> dict[int, tuple[int, int, float, int]]:
        return {eid: rec[:4] for eid, rec in self._edges.items()}

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self._edges


class NaivePathForest:
    """Same interface as PathForest, answered by breadth-first search."""

    def __init__(self, n: int):
        self.n = n
        self._adj: list[dict[int, int]] = [{} for _ in range(n)]
        self._edges: dict[int, tuple[int, int, float, int]] = {}
        self._next_id = 0

    def _path(self, u: int, v: int) -> list[int] | None:
        prev = {u: None}
        q = deque([u])
        while q:
            x = q.popleft()
            if x == v:
                break
            for y, eid in self._adj[x].items():
                if y not in prev:
                    prev[y] = (x, eid)
                    q.append(y)
        if v not in prev:
            return None
        out = []
        while prev[v] is not None:
            x, eid = prev[v]
            out.append(eid)
            v = x
        return out

    def connected(self, u: int, v: int) -> bool:
        return self._path(u, v) is not None

    def link(self, u: int, v: int, w: float, timestamp: int, edge_id: int | None = None) -> int:
        if u == v or self.connected(u, v):
            raise CycleError(f"{u} and {v} are already connected")
        if edge_id is None:
            edge_id = self._next_id
        self._next_id = max(self._next_id, edge_id + 1)
        self._adj[u][v] = edge_id
        self._adj[v][u] = edge_id
        self._edges[edge_id] = (u, v, w, timestamp)
        return edge_id

    def cut(self, edge_id: int) -> None:
        rec = self._edges.pop(edge_id, None)
        if rec is None:
            raise NoSuchEdge(f"no path-forest edge {edge_id}")
        u, v = rec[0], rec[1]
        del self._adj[u][v]
        del self._adj[v][u]

    def path_max_edge(self, u: int, v: int) -> tuple[int, float]:
        if u == v:
            raise DomainError("path between a vertex and itself has no edges")
        path = self._path(u, v)
        if path is None:
            raise NotConnected(f"{u} and {v} are in different trees")
        eid = max(path, key=lambda e: (self._edges[e][2], self._edges[e][3], e))
        return eid, self._edges[eid][2]

    def edge(self, edge_id: int) -> tuple[int, int, float, int]:
        return self._edges[edge_id]

    def edges(self) -> dict[int, tuple[int, int, float, int]]:
        return dict(self._edges)

    def __contains__(self, edge_id: int) -> bool:
        return edge_id in self._edges


def make_path_forest(n: int, naive: bool = False):
    return NaivePathForest(n) if naive else PathForest(n)
