"""Vertex-color distance oracle on top of a generic oracle.

Vertices are partitioned into colors; a color is active or inactive.
For every portal p and color i, N[p][i] is the smallest D[p][v] over the
vertices v of color i (with that vertex as witness), and each portal keeps
a heap of (N[p][i], i, witness) over the active colors.

In incremental mode colors only merge, smaller into larger. In fully
dynamic mode every color carries a spanning tree stored in an Euler-tour
forest whose aggregates give N[p][i] directly; a color is named by its
smallest vertex, so splitting an edge undoes the merge that created it.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Iterable

from dynst.errors import (
    DomainError,
    InactiveColor,
    ModeError,
    NoSuchColor,
    NoSuchTreeEdge,
    PortalDisconnected,
    WrongColorEndpoint,
)
from dynst.forest.ett import EulerTourForest
from dynst.oracle.generic import GenericOracle
from dynst.oracle.heap import IndexedHeap

INCREMENTAL = "incremental"
FULL = "full"


class ColorState:
    def __init__(self, oracle: GenericOracle, mode: str = INCREMENTAL,
                 forest: Iterable[tuple[int, int]] = (), seed: int = 0):
        if mode not in (INCREMENTAL, FULL):
            raise ModeError(f"unknown mode {mode!r}")
        self.oracle = oracle
        self.n = oracle.n
        self.mode = mode
        self.counters: Counter = Counter()
        self.relabels = 0
        self._heaps: dict[int, IndexedHeap] = {}
        self._active: set[int] = set()
        if mode == INCREMENTAL:
            self._color = list(range(self.n))
            self._members: dict[int, list[int]] = {v: [v] for v in range(self.n)}
            self._np: dict[int, dict[int, tuple[float, int]]] = {
                v: {p: (d, v) for p, d in oracle.portal_dists(v).items()} for v in range(self.n)
            }
            for u, v in forest:
                a, b = self._color[u], self._color[v]
                if a != b:
                    self._absorb(*((a, b) if len(self._members[a]) >= len(self._members[b]) else (b, a)))
        else:
            keys = [oracle.portal_dists(v) for v in range(self.n)]
            self._ett = EulerTourForest(self.n, keys=keys, seed=seed)
            for u, v in forest:
                self._ett.link(u, v)

    # -- lookups ----------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise DomainError(f"vertex {v} out of range")

    def color_of(self, v: int) -> int:
        if self.mode == INCREMENTAL:
            return self._color[v]
        return self._ett.component_id(v)

    def _check_color(self, c: int) -> None:
        if self.mode == INCREMENTAL:
            ok = c in self._members
        else:
            ok = 0 <= c < self.n and self._ett.component_id(c) == c
        if not ok:
            raise NoSuchColor(f"no color {c}")

    def is_active(self, c: int) -> bool:
        return c in self._active

    def active_colors(self) -> list[int]:
        return sorted(self._active)

    def members(self, c: int) -> list[int]:
        self._check_color(c)
        if self.mode == INCREMENTAL:
            return sorted(self._members[c])
        return sorted(self._ett.component_vertices(c))

    def colors(self) -> list[int]:
        if self.mode == INCREMENTAL:
            return sorted(self._members)
        return sorted({self._ett.component_id(v) for v in range(self.n)})

    def portal_mins(self, c: int) -> dict[int, tuple[float, int]]:
        """N[p][c] with witness for every portal p of some vertex of c."""
        if self.mode == INCREMENTAL:
            return self._np[c]
        return self._ett.component_keys(c)

    def heap(self, p: int) -> IndexedHeap:
        h = self._heaps.get(p)
        if h is None:
            h = self._heaps[p] = IndexedHeap()
        return h

    def tree_edges(self) -> set[tuple[int, int]]:
        if self.mode != FULL:
            raise ModeError("spanning trees exist only in fully dynamic mode")
        return {(a, b) for a, b in self._ett._arcs if a < b}

    @property
    def ops(self) -> int:
        return sum(self.counters.values())

    # -- heap bookkeeping -------------------------------------------------

    def _push(self, c: int) -> None:
        for p, (d, w) in self.portal_mins(c).items():
            self.heap(p).push(c, (d, c, w))

    def _pop(self, c: int) -> None:
        for p in self.portal_mins(c):
            self._heaps[p].remove(c)

    def _absorb(self, big: int, small: int) -> None:
        moved = self._members.pop(small)
        for v in moved:
            self._color[v] = big
        self.relabels += len(moved)
        self._members[big].extend(moved)
        target = self._np[big]
        live = big in self._active
        for p, val in self._np.pop(small).items():
            if small in self._active:
                self._heaps[p].remove(small)
            cur = target.get(p)
            if cur is None or val < cur:
                target[p] = val
                if live:
                    self.heap(p).push(big, (val[0], big, val[1]))
        self._active.discard(small)

    # -- updates ----------------------------------------------------------

    def activate(self, c: int) -> None:
        self._check_color(c)
        self.counters["activate"] += 1
        if c in self._active:
            return
        self._active.add(c)
        self._push(c)

    def deactivate(self, c: int) -> None:
        if self.mode != FULL:
            raise ModeError("deactivate needs fully dynamic mode")
        self._check_color(c)
        self.counters["deactivate"] += 1
        if c not in self._active:
            return
        self._pop(c)
        self._active.discard(c)

    def merge(self, i: int, j: int, u: int | None = None, v: int | None = None) -> int:
        self._check_color(i)
        self._check_color(j)
        if i == j:
            raise DomainError(f"cannot merge color {i} with itself")
        if i not in self._active or j not in self._active:
            raise InactiveColor(f"merge needs active colors, got {i} and {j}")
        self.counters["merge"] += 1
        if self.mode == INCREMENTAL:
            big, small = (i, j) if len(self._members[i]) >= len(self._members[j]) else (j, i)
            self._absorb(big, small)
            return big
        if u is None or v is None:
            raise DomainError("fully dynamic merge needs the joining edge")
        if self.color_of(u) != i or self.color_of(v) != j:
            raise WrongColorEndpoint(f"edge ({u}, {v}) does not join colors {i} and {j}")
        self._pop(i)
        self._pop(j)
        self._active.discard(i)
        self._active.discard(j)
        self._ett.link(u, v)
        c = self._ett.component_id(u)
        self._active.add(c)
        self._push(c)
        return c

    def split(self, c: int, u: int, v: int) -> tuple[int, int]:
        if self.mode != FULL:
            raise ModeError("split needs fully dynamic mode")
        self._check_color(c)
        if not self._ett.has_edge(u, v):
            raise NoSuchTreeEdge(f"({u}, {v}) is not a tree edge")
        if self.color_of(u) != c:
            raise WrongColorEndpoint(f"edge ({u}, {v}) is not in color {c}")
        self.counters["split"] += 1
        live = c in self._active
        if live:
            self._pop(c)
            self._active.discard(c)
        self._ett.cut(u, v)
        a, b = self._ett.component_id(u), self._ett.component_id(v)
        if live:
            for x in (a, b):
                self._active.add(x)
                self._push(x)
        return a, b

    # -- queries ----------------------------------------------------------

    def distance(self, v: int, i: int) -> tuple[float, int] | None:
        """(d, witness) for the nearest vertex of active color i, or None."""
        self._check_vertex(v)
        self._check_color(i)
        self.counters["distance"] += 1
        if i not in self._active:
            return None
        if self.color_of(v) == i:
            return 0.0, v
        best = (math.inf, -1)
        for w, r in self.oracle.piece_neighbors(v).items():
            if (r, w) < best and self.color_of(w) == i:
                best = (r, w)
        pv = self.oracle.portal_dists(v)
        mins = self.portal_mins(i)
        small, big = (pv, mins) if len(pv) <= len(mins) else (mins, pv)
        for p in small:
            if p in big:
                d, w = mins[p]
                cand = (pv[p] + d, w)
                if cand < best:
                    best = cand
        return None if best[1] < 0 else best

    def nearest(self, v: int, k: int = 1) -> list[tuple[float, int, int]]:
        """Up to k (d, color, witness) triples for the nearest active colors."""
        self._check_vertex(v)
        if not 1 <= k <= 3:
            raise DomainError(f"k must be in 1..3, got {k}")
        self.counters["nearest"] += 1
        pieces = self.oracle.piece_neighbors(v)
        pv = self.oracle.portal_dists(v)
        own = self.color_of(v)
        piece_colors = [(r, self.color_of(w), w) for w, r in pieces.items()]
        out: list[tuple[float, int, int]] = []
        excluded: set[int] = set()
        for rnd in range(k):
            best = None
            if own in self._active and own not in excluded:
                best = (0.0, own, v)
            for cand in piece_colors:
                c = cand[1]
                if c in self._active and c not in excluded and (best is None or cand < best):
                    best = cand
            for p, dv in pv.items():
                h = self._heaps.get(p)
                if not h:
                    continue
                for (d, c, w), _ in h.smallest(rnd + 1):
                    if c not in excluded:
                        cand = (dv + d, c, w)
                        if best is None or cand < best:
                            best = cand
                        break
            if best is None:
                break
            out.append(best)
            excluded.add(best[1])
        return out

    def portal_reconnect_mst(self, colors: Iterable[int]) -> list[tuple[int, int, float]]:
        """Spanning tree over the given colors built from portal distances.

        At every portal only the edges from the nearest color to the others
        are considered. Returns (u, w, d) witness edges, one per tree edge.
        """
        cols = sorted(set(colors))
        for c in cols:
            self._check_color(c)
        self.counters["reconnect"] += 1
        if len(cols) <= 1:
            return []
        per_portal: dict[int, list[tuple[float, int, int]]] = {}
        for c in cols:
            for p, (d, w) in self.portal_mins(c).items():
                per_portal.setdefault(p, []).append((d, c, w))
        best: dict[tuple[int, int], tuple[float, int, int]] = {}
        for p in sorted(per_portal):
            entries = per_portal[p]
            if len(entries) < 2:
                continue
            d0, c0, w0 = min(entries)
            for d, c, w in entries:
                if c == c0:
                    continue
                key = (min(c0, c), max(c0, c))
                cand = (d0 + d, w0, w) if c0 < c else (d + d0, w, w0)
                if key not in best or cand < best[key]:
                    best[key] = cand
        parent = {c: c for c in cols}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        out = []
        for (a, b), (d, wa, wb) in sorted(best.items(), key=lambda kv: (kv[1][0], kv[0])):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                out.append((wa, wb, d))
        if len(out) != len(cols) - 1:
            raise PortalDisconnected("portal distances do not connect all colors")
        return out
