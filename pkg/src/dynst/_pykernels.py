"""Pure-Python implementations of the numeric kernels.

Used when the compiled module is unavailable or DYNST_PURE_PYTHON is set.
"""
import heapq
import math

import numpy as np


def dijkstra(indptr, indices, weights, src: int) -> np.ndarray:
    n = len(indptr) - 1
    dist = [math.inf] * n
    dist[src] = 0.0
    done = [False] * n
    heap = [(0.0, src)]
    ip = indptr.tolist() if hasattr(indptr, "tolist") else list(indptr)
    ix = indices.tolist() if hasattr(indices, "tolist") else list(indices)
    wt = weights.tolist() if hasattr(weights, "tolist") else list(weights)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in range(ip[u], ip[u + 1]):
            v = ix[k]
            nd = d + wt[k]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return np.asarray(dist, dtype=np.float64)


def dreyfus_wagner(dist: np.ndarray, terminals) -> float:
    k = len(terminals)
    if k <= 1:
        return 0.0
    dist = np.asarray(dist, dtype=np.float64)
    n = dist.shape[0]
    m = k - 1
    dp = np.full((1 << m, n), math.inf)
    for i in range(m):
        dp[1 << i] = dist[terminals[i]]
    for mask in range(1, 1 << m):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        g = np.full(n, math.inf)
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                np.minimum(g, dp[sub] + dp[mask ^ sub], out=g)
            sub = (sub - 1) & mask
        # one relaxation pass suffices because dist is a metric closure
        dp[mask] = (g[:, None] + dist).min(axis=0)
    return float(dp[(1 << m) - 1][terminals[m]])
