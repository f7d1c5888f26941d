"""Plain-loop reference kernels.

These define the semantics the other backends must reproduce exactly.
"""

from __future__ import annotations

import numpy as np


def pointer_double(nxt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Chain terminal and distance for every vertex of a functional graph.

    nxt[v] is the successor of v, or -1 if v has none.  For a vertex on a
    successor chain the result is (terminal vertex, steps to it); for a
    vertex on a cycle it is (-1, 0).
    """
    n = len(nxt)
    reach = np.empty(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.int64)
    for v in range(n):
        cur = v
        steps = 0
        while nxt[cur] >= 0 and steps <= n:
            cur = int(nxt[cur])
            steps += 1
        if nxt[cur] >= 0:
            reach[v] = -1
            dist[v] = 0
        else:
            reach[v] = cur
            dist[v] = steps
    return reach, dist


def scan_add(values: np.ndarray) -> np.ndarray:
    """Inclusive prefix sums."""
    out = np.empty(len(values), dtype=np.int64)
    total = 0
    for i, v in enumerate(values):
        total += int(v)
        out[i] = total
    return out


def reach_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean adjacency matrix."""
    n = adj.shape[0]
    out = adj.copy()
    for v in range(n):
        out[v, v] = True
    for k in range(n):
        for i in range(n):
            if out[i, k]:
                for j in range(n):
                    if out[k, j]:
                        out[i, j] = True
    return out
