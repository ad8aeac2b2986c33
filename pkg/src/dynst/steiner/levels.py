"""Integer levels of discretized distances."""
from __future__ import annotations

import math

from dynst.errors import DomainError
from dynst.graph import WeightedGraph, level_of, shortest_paths


def floor_level(x: float, base: float) -> int:
    """Largest integer k with base**k <= x."""
    k = level_of(x, base)
    return k if base ** k <= x else k - 1


class LevelIndex:
    def __init__(self, base: float, lo: int = 0, hi: int = 0):
        if not base > 1:
            raise DomainError(f"base {base!r} must exceed 1")
        self.base = base
        self.lo = lo
        self.hi = max(lo, hi)

    def level(self, d: float) -> int:
        return level_of(d, self.base)

    def tree_level(self, cost: float) -> int:
        return floor_level(cost, self.base)

    def bottom_level(self, cost: float, tau: float, mu: float, n: int) -> int:
        """Level below which tree edges together weigh little against cost."""
        return floor_level(tau * cost / (8.0 * mu * mu * (1.0 + tau) ** 3 * n), self.base)

    def levels(self) -> range:
        return range(self.lo, self.hi + 1)

    @classmethod
    def for_graph(cls, g: WeightedGraph, base: float, alpha: float) -> "LevelIndex":
        """Levels covering every finite oracle distance: at least the lightest
        edge, at most alpha times twice the largest component eccentricity."""
        if g.m == 0:
            return cls(base, 0, 0)
        lo = level_of(min(w for _, _, w in g.edges), base)
        ecc = 0.0
        seen = [False] * g.n
        for s in range(g.n):
            if seen[s]:
                continue
            dist = shortest_paths(g, s)
            for v, x in enumerate(dist):
                if math.isfinite(x):
                    seen[v] = True
                    ecc = max(ecc, float(x))
        hi = level_of(max(alpha * 2.0 * ecc, base ** lo), base)
        return cls(base, lo, hi)
