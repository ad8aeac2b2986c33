"""Oracle constructions for general weighted graphs.

build_tz3 samples a portal set shared by every vertex and gives each vertex
a star piece over the vertices closer to it than its nearest portal.
build_bunch_oracle uses Thorup-Zwick bunches as per-vertex portal sets.
"""
from __future__ import annotations

import heapq
import math
import random

from dynst.errors import DomainError
from dynst.graph import WeightedGraph, shortest_paths
from dynst.oracle.generic import GenericOracle, Piece

MAX_RESAMPLES = 1000


def _ball_before_portal(g: WeightedGraph, w: int, is_portal: list[bool]) -> dict[int, float]:
    """Vertices strictly closer to w than w's nearest portal, with distances."""
    dist = {w: 0.0}
    done = set()
    heap = [(0.0, w)]
    out = {}
    while heap:
        d, x = heapq.heappop(heap)
        if x in done:
            continue
        if is_portal[x]:
            # every vertex at distance < d is already settled
            return {y: dy for y, dy in out.items() if dy < d}
        done.add(x)
        out[x] = d
        for y, wt in g.adj[x]:
            nd = d + wt
            if nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return out


def build_tz3(g: WeightedGraph, seed: int = 0) -> GenericOracle:
    n = g.n
    if n == 0:
        raise DomainError("empty graph")
    rng = random.Random(seed)
    prob = 1.0 / math.sqrt(n)
    for _ in range(MAX_RESAMPLES):
        portals = [v for v in range(n) if rng.random() < prob]
        if portals:
            break
    else:  # pragma: no cover - probability ~ 0
        portals = [rng.randrange(n)]
    is_portal = [False] * n
    for p in portals:
        is_portal[p] = True
    from_portal = {p: shortest_paths(g, p) for p in portals}
    pd = [{p: float(from_portal[p][v]) for p in portals if math.isfinite(from_portal[p][v])} for v in range(n)]
    balls = [_ball_before_portal(g, w, is_portal) for w in range(n)]
    pieces = []
    for w in range(n):
        leaves = {}
        for u in balls[w]:
            if w in balls[u]:
                # read the distance from one fixed side so both stars agree exactly
                a, b = min(u, w), max(u, w)
                leaves[u] = balls[a][b]
        pieces.append([Piece.star(w, leaves)] if leaves else [])
    oracle = GenericOracle(n, pd, pieces, alpha=3.0, name="tz3")
    oracle.sampled_portals = portals
    return oracle


def _multi_source(g: WeightedGraph, sources) -> list[float]:
    dist = [math.inf] * g.n
    heap = []
    for s in sources:
        dist[s] = 0.0
        heap.append((0.0, s))
    heapq.heapify(heap)
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, wt in g.adj[x]:
            nd = d + wt
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def _cluster(g: WeightedGraph, w: int, bound: list[float]) -> dict[int, float]:
    """Vertices v with d(w, v) < bound[v], found by a pruned Dijkstra."""
    dist = {w: 0.0}
    heap = [(0.0, w)]
    out = {}
    while heap:
        d, x = heapq.heappop(heap)
        if x in out:
            continue
        out[x] = d
        for y, wt in g.adj[x]:
            nd = d + wt
            if nd < bound[y] and nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return out


def sample_levels(n: int, l: int, rng: random.Random) -> list[list[int]]:
    """A_0 = V, each A_i keeps members of A_{i-1} with probability n^(-1/l)."""
    if l < 1:
        raise DomainError(f"level count must be >= 1, got {l}")
    prob = n ** (-1.0 / l) if n > 1 else 1.0
    for _ in range(MAX_RESAMPLES):
        levels = [list(range(n))]
        for _ in range(1, l):
            levels.append([v for v in levels[-1] if rng.random() < prob])
        if levels[-1]:
            return levels
    raise DomainError("could not sample a non-empty top level")  # pragma: no cover


def build_bunches(g: WeightedGraph, l: int, seed: int = 0):
    """Returns (levels, bunches) where bunches[v] maps w in B(v) to d(v, w)."""
    if g.n == 0:
        raise DomainError("empty graph")
    rng = random.Random(seed)
    levels = sample_levels(g.n, l, rng)
    bunches: list[dict[int, float]] = [{} for _ in range(g.n)]
    for i in range(l):
        nxt = set(levels[i + 1]) if i + 1 < l else set()
        bound = _multi_source(g, nxt) if nxt else [math.inf] * g.n
        for w in levels[i]:
            if w in nxt:
                continue
            for v, d in _cluster(g, w, bound).items():
                bunches[v][w] = d
    return levels, [dict(sorted(b.items())) for b in bunches]


def build_bunch_oracle(g: WeightedGraph, l: int, seed: int = 0) -> GenericOracle:
    levels, bunches = build_bunches(g, l, seed)
    oracle = GenericOracle(g.n, bunches, alpha=2 * l - 1, name=f"bunch:{l}")
    oracle.levels = levels
    return oracle
