"""JIT-compiled kernels. Same contracts as the scalar backend."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _ceil_log2(n):
    k = 0
    size = 1
    while size < n:
        size *= 2
        k += 1
    return k


@njit(cache=True)
def pointer_double(nxt):
    n = nxt.shape[0]
    jump = np.empty(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.int64)
    for v in range(n):
        if nxt[v] < 0:
            jump[v] = v
            dist[v] = 0
        else:
            jump[v] = nxt[v]
            dist[v] = 1
    for _ in range(_ceil_log2(n)):
        new_jump = np.empty(n, dtype=np.int64)
        new_dist = np.empty(n, dtype=np.int64)
        for v in range(n):
            new_dist[v] = dist[v] + dist[jump[v]]
            new_jump[v] = jump[jump[v]]
        jump = new_jump
        dist = new_dist
    reach = np.empty(n, dtype=np.int64)
    for v in range(n):
        if nxt[jump[v]] < 0:
            reach[v] = jump[v]
        else:
            reach[v] = -1
            dist[v] = 0
    return reach, dist


@njit(cache=True)
def scan_add(values):
    n = values.shape[0]
    out = np.empty(n, dtype=np.int64)
    total = 0
    for i in range(n):
        total += values[i]
        out[i] = total
    return out


@njit(cache=True)
def reach_closure(adj):
    n = adj.shape[0]
    out = adj.copy()
    for v in range(n):
        out[v, v] = True
    for _ in range(_ceil_log2(n)):
        sq = np.zeros((n, n), dtype=np.bool_)
        for i in range(n):
            for k in range(n):
                if out[i, k]:
                    for j in range(n):
                        if out[k, j]:
                            sq[i, j] = True
        out = sq
    return out
