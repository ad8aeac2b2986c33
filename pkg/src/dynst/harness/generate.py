"""Random connected instances and random valid traces."""
from __future__ import annotations

import math
import random

from dynst.errors import ParamError
from dynst.graph import WeightedGraph
from dynst.harness.trace import Op

KINDS = ("gnm", "grid", "geometric")
MAX_TRIES = 1000
W_LO, W_HI = 1.0, 10.0


def _gnm(n: int, m: int, rng: random.Random) -> WeightedGraph:
    if m < n - 1 or m > n * (n - 1) // 2:
        raise ParamError(f"m={m} cannot give a connected simple graph on {n} vertices")
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(MAX_TRIES):
        chosen = sorted(rng.sample(pairs, m))
        g = WeightedGraph(n, [(u, v, rng.uniform(W_LO, W_HI)) for u, v in chosen])
        if g.is_connected():
            return g
    raise ParamError(f"no connected G(n={n}, m={m}) after {MAX_TRIES} tries")


def _grid(n: int, rng: random.Random) -> WeightedGraph:
    cols = max(1, math.ceil(math.sqrt(n)))
    edges = []
    for v in range(n):
        if (v + 1) % cols and v + 1 < n:
            edges.append((v, v + 1, rng.uniform(W_LO, W_HI)))
        if v + cols < n:
            edges.append((v, v + cols, rng.uniform(W_LO, W_HI)))
    return WeightedGraph(n, edges)


def _geometric(n: int, radius: float | None, rng: random.Random) -> WeightedGraph:
    r = radius if radius is not None else 1.5 * math.sqrt(2.0 * math.log(max(n, 2)) / n)
    if not r > 0:
        raise ParamError(f"radius {r!r} must be positive")
    for _ in range(MAX_TRIES):
        pts = [(rng.random(), rng.random()) for _ in range(n)]
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                d = math.dist(pts[u], pts[v])
                if d <= r and d > 0:
                    edges.append((u, v, d))
        g = WeightedGraph(n, edges)
        if g.is_connected():
            return g
    raise ParamError(f"no connected geometric graph with radius {r} after {MAX_TRIES} tries")


def random_trace(n: int, ops: int, mix: float, rng: random.Random) -> list[Op]:
    """Each step adds with probability mix (removes otherwise) when both are possible."""
    if not 0.0 <= mix <= 1.0:
        raise ParamError(f"mix {mix!r} must lie in [0, 1]")
    live: list[int] = []
    out = []
    for _ in range(ops):
        can_add, can_remove = len(live) < n, bool(live)
        if can_add and (not can_remove or rng.random() < mix):
            v = rng.choice([x for x in range(n) if x not in set(live)])
            live.append(v)
            out.append(Op("add", v))
        elif can_remove and mix < 1.0:
            v = live.pop(rng.randrange(len(live)))
            out.append(Op("remove", v))
        else:
            break
    return out


def generate_instance(kind: str, n: int, m: int | None = None, seed: int = 0, ops: int = 0,
                      mix: float = 0.6, radius: float | None = None) -> tuple[WeightedGraph, list[Op]]:
    if kind not in KINDS:
        raise ParamError(f"unknown kind {kind!r}")
    if n < 1 or ops < 0:
        raise ParamError("n must be positive and ops non-negative")
    rng = random.Random(seed)
    if kind == "gnm":
        g = _gnm(n, m if m is not None else 3 * n, rng)
    elif kind == "grid":
        g = _grid(n, rng)
    else:
        g = _geometric(n, radius, rng)
    return g, random_trace(n, ops, mix, rng)
