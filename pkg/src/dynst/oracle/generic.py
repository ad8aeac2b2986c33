"""Generic approximate distance oracles built from portals and pieces.

Every vertex v has a set of portals with stored distances D[p][v] and a
family of pieces (small weighted graphs). The oracle distance between u
and w is the smaller of the piece distance (shortest path from u to w
inside one of u's pieces) and the portal distance (minimum of
D[p][u] + D[p][w] over shared portals p).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from dynst.errors import DomainError
from dynst.graph import WeightedGraph, discretize

TOL = 1e-9


@dataclass(frozen=True)
class Piece:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]

    def distances_from(self, v: int) -> dict[int, float]:
        if v not in self.vertices:
            return {}
        adj: dict[int, list[tuple[int, float]]] = {x: [] for x in self.vertices}
        for a, b, w in self.edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        dist = {v: 0.0}
        heap = [(0.0, v)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for y, w in adj[x]:
                nd = d + w
                if nd < dist.get(y, math.inf):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return dist

    @staticmethod
    def star(center: int, leaves: dict[int, float]) -> "Piece":
        verts = tuple(sorted(set(leaves) | {center})) if leaves else ()
        edges = tuple((center, u, w) for u, w in sorted(leaves.items()) if u != center)
        return Piece(verts, edges)


class GenericOracle:
    def __init__(
        self,
        n: int,
        portal_dists: Sequence[dict[int, float]],
        pieces: Sequence[Sequence[Piece]] | None = None,
        alpha: float = 1.0,
        name: str = "generic",
    ):
        if len(portal_dists) != n:
            raise DomainError("need one portal map per vertex")
        self.n = n
        self.alpha = float(alpha)
        self.name = name
        # D[p][v] is stored per vertex as _pd[v][p]
        self._pd: list[dict[int, float]] = [dict(sorted(m.items())) for m in portal_dists]
        self._pieces: list[tuple[Piece, ...]] = [tuple(ps) for ps in (pieces or [()] * n)]
        self._visible: list[dict[int, float] | None] = [None] * n
        self._clusters: dict[int, list[int]] | None = None

    def portals(self, v: int) -> list[int]:
        return list(self._pd[v])

    def portal_dists(self, v: int) -> dict[int, float]:
        return self._pd[v]

    def D(self, p: int, v: int) -> float:
        return self._pd[v].get(p, math.inf)

    def pieces(self, v: int) -> tuple[Piece, ...]:
        return self._pieces[v]

    def cluster(self, p: int) -> list[int]:
        if self._clusters is None:
            cl: dict[int, list[int]] = {}
            for v in range(self.n):
                for q in self._pd[v]:
                    cl.setdefault(q, []).append(v)
            self._clusters = cl
        return self._clusters.get(p, [])

    def all_portals(self) -> list[int]:
        self.cluster(-1)
        return sorted(self._clusters)

    def piece_neighbors(self, v: int) -> dict[int, float]:
        """Finite piece distances from v, excluding v itself."""
        vis = self._visible[v]
        if vis is None:
            vis = {}
            for piece in self._pieces[v]:
                for w, d in piece.distances_from(v).items():
                    if w != v and d < vis.get(w, math.inf):
                        vis[w] = d
            self._visible[v] = vis = dict(sorted(vis.items()))
        return vis

    def piece_distance(self, u: int, w: int) -> float:
        if u == w:
            return 0.0
        return self.piece_neighbors(u).get(w, math.inf)

    def portal_distance(self, u: int, w: int) -> float:
        pu, pw = self._pd[u], self._pd[w]
        small, big = (pu, pw) if len(pu) <= len(pw) else (pw, pu)
        best = math.inf
        for p in small:
            if p in big:
                s = pu[p] + pw[p]
                if s < best:
                    best = s
        return best

    def gd_distance(self, u: int, w: int) -> float:
        if not (0 <= u < self.n and 0 <= w < self.n):
            raise DomainError(f"vertex out of range: {u}, {w}")
        if u == w:
            return 0.0
        return min(self.piece_distance(u, w), self.portal_distance(u, w))

    def stats(self) -> dict[str, int]:
        piece_set = {p for ps in self._pieces for p in ps}
        return {
            "ptot": sum(len(m) for m in self._pd),
            "pnum": len(self.all_portals()),
            "pmax": max((len(m) for m in self._pd), default=0),
            "piece_tot": sum(len(p.vertices) for p in piece_set),
            "piece_num": len(piece_set),
            "piece_max": max((len(p.vertices) for p in piece_set), default=0),
            "pieces_per_vertex": max((len(ps) for ps in self._pieces), default=0),
        }


def exact_oracle(g: WeightedGraph) -> GenericOracle:
    """Every vertex is a portal of every vertex, with exact distances."""
    closure = g.closure
    pd = [{p: float(closure[p, v]) for p in range(g.n) if math.isfinite(closure[p, v])} for v in range(g.n)]
    return GenericOracle(g.n, pd, alpha=1.0, name="exact")


def verify_generic(oracle: GenericOracle, g: WeightedGraph, tol: float = TOL) -> list[str]:
    """List every violated oracle condition; an empty list means the oracle is valid."""
    closure = g.closure
    out = []
    n = g.n
    for v in range(n):
        for p, d in oracle.portal_dists(v).items():
            if d < closure[p, v] - tol:
                out.append(f"D[{p}][{v}]={d} below true distance {closure[p, v]}")
        for w, r in oracle.piece_neighbors(v).items():
            if r < closure[v, w] - tol:
                out.append(f"piece distance R({v},{w})={r} below true distance {closure[v, w]}")
    for u in range(n):
        for w in range(u + 1, n):
            ru, rw = oracle.piece_distance(u, w), oracle.piece_distance(w, u)
            if not (ru == rw or abs(ru - rw) <= tol):
                out.append(f"piece distance not symmetric for ({u},{w}): {ru} vs {rw}")
            true = closure[u, w]
            if not math.isfinite(true):
                continue
            if abs(ru - true) <= tol:
                continue
            if oracle.portal_distance(u, w) > oracle.alpha * true + tol:
                out.append(
                    f"pair ({u},{w}): no exact piece and portal distance "
                    f"{oracle.portal_distance(u, w)} exceeds {oracle.alpha} * {true}"
                )
    return out


class NearMetricView:
    """Oracle distances, optionally rounded up to powers of 1 + tau."""

    def __init__(self, oracle: GenericOracle, tau: float | None = None):
        self.oracle = oracle
        self.tau = tau
        self.n = oracle.n
        self._raw: dict[tuple[int, int], float] = {}

    @property
    def mu(self) -> float:
        return self.oracle.alpha * (1.0 + self.tau if self.tau else 1.0)

    def raw(self, u: int, w: int) -> float:
        if u == w:
            return 0.0
        key = (u, w) if u < w else (w, u)
        d = self._raw.get(key)
        if d is None:
            d = self._raw[key] = self.oracle.gd_distance(*key)
        return d

    def d(self, u: int, w: int) -> float:
        r = self.raw(u, w)
        if self.tau is None or r == 0.0:
            return r
        return discretize(r, self.tau)

    def key(self, u: int, w: int) -> tuple[float, float, int, int]:
        """Total order on pairs: rounded distance, raw distance, then ids."""
        return self.d(u, w), self.raw(u, w), min(u, w), max(u, w)

    def matrix(self, vertices: Sequence[int]) -> np.ndarray:
        idx = list(vertices)
        return np.array([[self.d(a, b) for b in idx] for a in idx])
