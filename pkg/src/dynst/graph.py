"""Weighted undirected graphs, shortest paths, MSTs and exact Steiner costs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from dynst import kernels
from dynst.errors import (
    DisconnectedError,
    DomainError,
    InvariantError,
    ParseError,
    TooManyTerminals,
)

MAX_EXACT_TERMINALS = 12


class WeightedGraph:
    """Immutable simple graph on vertices 0..n-1 with positive float weights."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]]):
        if n < 0:
            raise InvariantError(f"negative vertex count {n}")
        self.n = n
        seen = set()
        clean = []
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise InvariantError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvariantError(f"self-loop at {u}")
            if not (w > 0) or math.isinf(w):
                raise InvariantError(f"weight {w!r} on ({u}, {v}) must be positive and finite")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvariantError(f"duplicate edge {key}")
            seen.add(key)
            clean.append((u, v, w))
        self.edges: tuple[tuple[int, int, float], ...] = tuple(clean)
        self.adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in self.edges:
            self.adj[u].append((v, w))
            self.adj[v].append((u, w))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        for u in range(self.n):
            indptr[u + 1] = indptr[u] + len(self.adj[u])
        indices = np.fromiter((v for nbrs in self.adj for v, _ in nbrs), dtype=np.int64, count=int(indptr[-1]))
        weights = np.fromiter((w for nbrs in self.adj for _, w in nbrs), dtype=np.float64, count=int(indptr[-1]))
        return indptr, indices, weights

    @cached_property
    def closure(self) -> np.ndarray:
        out = np.empty((self.n, self.n))
        for s in range(self.n):
            out[s] = shortest_paths(self, s)
        out.setflags(write=False)
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return bool(np.isfinite(shortest_paths(self, 0)).all())


def load_graph(text: str) -> WeightedGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph file")
    try:
        n, m = (int(t) for t in _fields(lines[0], 2, 1))
    except ValueError as exc:
        raise ParseError(f"line 1: bad header {lines[0]!r}") from exc
    if n < 0 or m < 0:
        raise ParseError("line 1: negative counts")
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges but {len(lines) - 1} edge lines follow")
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        a, b, c = _fields(ln, 3, lineno)
        try:
            u, v, w = int(a), int(b), float(c)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: cannot parse {ln!r}") from exc
        if math.isnan(w):
            raise ParseError(f"line {lineno}: weight is NaN")
        edges.append((u, v, w))
    return WeightedGraph(n, edges)


def _fields(line: str, count: int, lineno: int) -> list[str]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"line {lineno}: expected {count} fields, got {len(parts)}")
    return parts


def read_graph(path) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def dump_graph(g: WeightedGraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v} {w!r}" for u, v, w in g.edges)
    return "\n".join(out) + "\n"


def shortest_paths(g: WeightedGraph, src: int) -> np.ndarray:
    if not 0 <= src < g.n:
        raise IndexError(f"source {src} out of range for n={g.n}")
    indptr, indices, weights = g.csr
    return kernels.dijkstra(indptr, indices, weights, src)


def metric_closure(g: WeightedGraph) -> np.ndarray:
    return g.closure


@dataclass
class Tree:
    vertices: list[int] = field(default_factory=list)
    edges: list[tuple[int, int, float]] = field(default_factory=list)

    @property
    def cost(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(min(u, v), max(u, v)) for u, v, _ in self.edges}


def mst(points: Sequence[int], dist: Callable[[int, int], float] | np.ndarray) -> Tree:
    """Kruskal over all pairs; ties go to the pair enumerated first."""
    pts = list(dict.fromkeys(points))
    if callable(dist):
        d = dist
    else:
        mat = dist
        d = lambda a, b: float(mat[a][b])  # noqa: E731
    cand = []
    idx = 0
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            w = d(a, b)
            if math.isinf(w):
                raise DisconnectedError(f"{a} and {b} are not connected")
            cand.append((w, idx, a, b))
            idx += 1
    cand.sort()
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for w, _, a, b in cand:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            edges.append((a, b, w))
            if len(edges) == len(pts) - 1:
                break
    return Tree(vertices=pts, edges=edges)


def exact_steiner_cost(g: WeightedGraph, terminals: Iterable[int]) -> float:
    S = list(dict.fromkeys(int(t) for t in terminals))
    if len(S) > MAX_EXACT_TERMINALS:
        raise TooManyTerminals(f"{len(S)} terminals exceed the limit of {MAX_EXACT_TERMINALS}")
    for t in S:
        if not 0 <= t < g.n:
            raise IndexError(f"terminal {t} out of range")
    if len(S) <= 1:
        return 0.0
    closure = g.closure
    if not np.isfinite(closure[np.ix_(S, S)]).all():
        raise DisconnectedError("terminals lie in different components")
    return float(kernels.dreyfus_wagner(closure, S))


def level_of(d: float, base: float) -> int:
    """Smallest integer k with base**k >= d."""
    if not (d > 0) or math.isinf(d):
        raise DomainError(f"cannot discretize {d!r}")
    if not base > 1:
        raise DomainError(f"base {base!r} must exceed 1")
    k = math.ceil(math.log(d) / math.log(base))
    # float guard: log can land one step off near exact powers
    while base ** (k - 1) >= d:
        k -= 1
    while base ** k < d:
        k += 1
    return k


def discretize(d: float, tau: float) -> float:
    """Round d up to the nearest power of 1 + tau."""
    if not tau > 0:
        raise DomainError(f"tau {tau!r} must be positive")
    base = 1.0 + tau
    return base ** level_of(d, base)
