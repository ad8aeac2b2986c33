"""Euler-tour forest on randomized treaps.

Each tree of the forest is stored as its Euler tour: one loop node per
vertex plus two arc nodes per edge. Treap nodes keep subtree aggregates
(sizes, vertex counts, edge weight sums, the minimum vertex id and, when
enabled, per-portal minima of vertex keys with a witness vertex).
"""
from __future__ import annotations

import random
from typing import Iterator

from dynst.errors import CycleError, DomainError, NoSuchEdge

_NO_VERTEX = 1 << 62


class _Node:
    __slots__ = ("left", "right", "parent", "prio", "size", "nverts", "wsum",
                 "minv", "u", "v", "w", "kagg", "agg")

    def __init__(self, u: int, v: int, w: float, prio: float, kagg):
        self.left = self.right = self.parent = None
        self.prio = prio
        self.u, self.v, self.w = u, v, w
        self.kagg = kagg
        self.size = 1
        if u == v:
            self.nverts, self.minv = 1, u
        else:
            self.nverts, self.minv = 0, _NO_VERTEX
        self.wsum = w
        self.agg = kagg


def _update(t: _Node, keyed: bool) -> None:
    a, b = t.left, t.right
    size, nv, ws, mv = 1, (1 if t.u == t.v else 0), t.w, (t.u if t.u == t.v else _NO_VERTEX)
    if a is not None:
        size += a.size
        nv += a.nverts
        ws += a.wsum
        if a.minv < mv:
            mv = a.minv
    if b is not None:
        size += b.size
        nv += b.nverts
        ws += b.wsum
        if b.minv < mv:
            mv = b.minv
    t.size, t.nverts, t.wsum, t.minv = size, nv, ws, mv
    if not keyed:
        return
    parts = [x for x in (a.agg if a is not None else None, t.kagg, b.agg if b is not None else None) if x]
    if not parts:
        t.agg = None
    elif len(parts) == 1:
        t.agg = parts[0]
    else:
        parts.sort(key=len, reverse=True)
        agg = dict(parts[0])
        for part in parts[1:]:
            for p, val in part.items():
                cur = agg.get(p)
                if cur is None or val < cur:
                    agg[p] = val
        t.agg = agg


class EulerTourForest:
    def __init__(self, n: int, keys: list[dict[int, float]] | None = None, seed: int = 0):
        self.n = n
        self._rng = random.Random(seed)
        self.keyed = keys is not None
        self._loops: list[_Node] = []
        for x in range(n):
            kagg = None
            if keys is not None and keys[x]:
                kagg = {p: (float(d), x) for p, d in keys[x].items()}
            self._loops.append(_Node(x, x, 0.0, self._rng.random(), kagg))
        self._arcs: dict[tuple[int, int], _Node] = {}

    # -- treap primitives -------------------------------------------------

    def _merge(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a.prio > b.prio:
            r = self._merge(a.right, b)
            a.right = r
            r.parent = a
            _update(a, self.keyed)
            return a
        r = self._merge(a, b.left)
        b.left = r
        r.parent = b
        _update(b, self.keyed)
        return b

    def _split(self, t, k: int):
        """Split into (first k nodes, rest); both returned roots are detached."""
        if t is None:
            return None, None
        ls = t.left.size if t.left is not None else 0
        if k <= ls:
            l, r = self._split(t.left, k)
            t.left = r
            if r is not None:
                r.parent = t
            _update(t, self.keyed)
            t.parent = None
            return l, t
        l, r = self._split(t.right, k - ls - 1)
        t.right = l
        if l is not None:
            l.parent = t
        _update(t, self.keyed)
        t.parent = None
        return t, r

    @staticmethod
    def _root(x: _Node) -> _Node:
        while x.parent is not None:
            x = x.parent
        return x

    @staticmethod
    def _index(x: _Node) -> int:
        pos = x.left.size if x.left is not None else 0
        while x.parent is not None:
            p = x.parent
            if p.right is x:
                pos += 1 + (p.left.size if p.left is not None else 0)
            x = p
        return pos

    def _join(self, *parts):
        root = None
        for part in parts:
            root = self._merge(root, part)
        if root is not None:
            root.parent = None
        return root

    def _reroot(self, x: int) -> _Node:
        node = self._loops[x]
        r = self._root(node)
        i = self._index(node)
        if i == 0:
            return r
        a, b = self._split(r, i)
        return self._join(b, a)

    # -- public operations -------------------------------------------------

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise DomainError(f"vertex {x} out of range")

    def connected(self, x: int, y: int) -> bool:
        self._check(x)
        self._check(y)
        return self._root(self._loops[x]) is self._root(self._loops[y])

    def has_edge(self, x: int, y: int) -> bool:
        return (x, y) in self._arcs

    def link(self, x: int, y: int, w: float = 0.0) -> None:
        if x == y or self.connected(x, y):
            raise CycleError(f"linking {x} and {y} would close a cycle")
        tx = self._reroot(x)
        ty = self._reroot(y)
        a1 = _Node(x, y, float(w), self._rng.random(), None)
        a2 = _Node(y, x, 0.0, self._rng.random(), None)
        self._arcs[(x, y)] = a1
        self._arcs[(y, x)] = a2
        self._join(tx, a1, ty, a2)

    def cut(self, x: int, y: int) -> None:
        a1 = self._arcs.get((x, y))
        if a1 is None:
            raise NoSuchEdge(f"no forest edge ({x}, {y})")
        a2 = self._arcs[(y, x)]
        r = self._root(a1)
        i1, i2 = self._index(a1), self._index(a2)
        if i1 > i2:
            i1, i2 = i2, i1
        left, rest = self._split(r, i1)
        _, rest = self._split(rest, 1)
        middle, rest = self._split(rest, i2 - i1 - 1)
        _, right = self._split(rest, 1)
        self._join(left, right)
        del self._arcs[(x, y)]
        del self._arcs[(y, x)]

    def component_min(self, v: int, p: int):
        """(dist, witness) minimizing over keys for portal p in v's tree, or None."""
        self._check(v)
        agg = self._root(self._loops[v]).agg
        if not agg:
            return None
        return agg.get(p)

    def component_keys(self, v: int) -> dict[int, tuple[float, int]]:
        agg = self._root(self._loops[v]).agg
        return agg if agg else {}

    def set_key(self, v: int, p: int, dist: float | None) -> None:
        if not self.keyed:
            raise DomainError("forest was built without keys")
        self._check(v)
        node = self._loops[v]
        kagg = dict(node.kagg) if node.kagg else {}
        if dist is None:
            kagg.pop(p, None)
        else:
            kagg[p] = (float(dist), v)
        node.kagg = kagg or None
        while node is not None:
            _update(node, True)
            node = node.parent

    def component_size(self, v: int) -> int:
        return self._root(self._loops[v]).nverts

    def component_weight(self, v: int) -> float:
        return self._root(self._loops[v]).wsum

    def component_id(self, v: int) -> int:
        """Smallest vertex id in v's tree; a canonical name for the tree."""
        return self._root(self._loops[v]).minv

    def component_vertices(self, v: int) -> Iterator[int]:
        stack, node = [], self._root(self._loops[v])
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            if node.u == node.v:
                yield node.u
            node = node.right

    def tour(self, v: int) -> list[tuple[int, int]]:
        out, stack, node = [], [], self._root(self._loops[v])
        while stack or node is not None:
            while node is not None:
                stack.append(node)
                node = node.left
            node = stack.pop()
            out.append((node.u, node.v))
            node = node.right
        return out

    def height(self, v: int) -> int:
        def h(t):
            if t is None:
                return 0
            return 1 + max(h(t.left), h(t.right))

        return h(self._root(self._loops[v]))

    def max_height(self) -> int:
        seen, best = set(), 0
        for x in range(self.n):
            r = self._root(self._loops[x])
            if id(r) not in seen:
                seen.add(id(r))
                best = max(best, self.height(x))
        return best

    def tour_length(self, v: int) -> int:
        return self._root(self._loops[v]).size
