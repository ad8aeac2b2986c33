# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the numeric kernels in _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline void _sift_up(double *hk, int *hv, int i):
    cdef double k = hk[i]
    cdef int v = hv[i]
    cdef int p
    while i > 0:
        p = (i - 1) >> 1
        if hk[p] <= k:
            break
        hk[i] = hk[p]
        hv[i] = hv[p]
        i = p
    hk[i] = k
    hv[i] = v


cdef inline void _sift_down(double *hk, int *hv, int size, int i):
    cdef double k = hk[i]
    cdef int v = hv[i]
    cdef int c
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and hk[c + 1] < hk[c]:
            c += 1
        if hk[c] >= k:
            break
        hk[i] = hk[c]
        hv[i] = hv[c]
        i = c
    hk[i] = k
    hv[i] = v


def dijkstra(indptr, indices, weights, int src):
    cdef const cnp.int64_t[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int64_t[:] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef const double[:] wt = np.ascontiguousarray(weights, dtype=np.float64)
    cdef int n = ip.shape[0] - 1
    out = np.full(n, np.inf)
    cdef double[:] dist = out
    cdef int cap = ix.shape[0] + 1
    cdef double *hk = <double *> malloc(cap * sizeof(double))
    cdef int *hv = <int *> malloc(cap * sizeof(int))
    cdef char *done = <char *> malloc(n * sizeof(char))
    cdef int size = 0
    cdef int u, v, k, i
    cdef double d, nd
    for i in range(n):
        done[i] = 0
    try:
        dist[src] = 0.0
        hk[0] = 0.0
        hv[0] = src
        size = 1
        while size > 0:
            d = hk[0]
            u = hv[0]
            size -= 1
            if size > 0:
                hk[0] = hk[size]
                hv[0] = hv[size]
                _sift_down(hk, hv, size, 0)
            if done[u]:
                continue
            done[u] = 1
            for k in range(ip[u], ip[u + 1]):
                v = ix[k]
                nd = d + wt[k]
                if nd < dist[v]:
                    dist[v] = nd
                    hk[size] = nd
                    hv[size] = v
                    _sift_up(hk, hv, size)
                    size += 1
    finally:
        free(hk)
        free(hv)
        free(done)
    return out


def dreyfus_wagner(dist_in, terminals):
    cdef int k = len(terminals)
    if k <= 1:
        return 0.0
    cdef const double[:, :] dist = np.ascontiguousarray(dist_in, dtype=np.float64)
    cdef int n = dist.shape[0]
    cdef int m = k - 1
    cdef int full = (1 << m) - 1
    dp_arr = np.full((1 << m, n), np.inf)
    cdef double[:, :] dp = dp_arr
    g_arr = np.empty(n)
    cdef double[:] g = g_arr
    cdef int i, v, u, mask, sub, low, rest, t
    cdef double best, c
    for i in range(m):
        t = terminals[i]
        for v in range(n):
            dp[1 << i, v] = dist[t, v]
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        for v in range(n):
            g[v] = INFINITY
        sub = (mask - 1) & mask
        while sub:
            if sub & low:
                rest = mask ^ sub
                for v in range(n):
                    c = dp[sub, v] + dp[rest, v]
                    if c < g[v]:
                        g[v] = c
            sub = (sub - 1) & mask
        # row-major relaxation; dp[mask] starts at +inf
        for u in range(n):
            best = g[u]
            if best == INFINITY:
                continue
            for v in range(n):
                c = best + dist[u, v]
                if c < dp[mask, v]:
                    dp[mask, v] = c
    return float(dp[full, terminals[m]])
