"""Vectorized numpy kernels."""

from __future__ import annotations

import numpy as np

from . import ceil_log2


def pointer_double(nxt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(nxt)
    ids = np.arange(n, dtype=np.int64)
    jump = np.where(nxt < 0, ids, nxt).astype(np.int64)
    dist = (nxt >= 0).astype(np.int64)
    for _ in range(ceil_log2(n)):
        dist = dist + dist[jump]
        jump = jump[jump]
    if n:
        # vertices whose jump target still has a successor sit on a cycle
        on_chain = nxt[jump] < 0
        reach = np.where(on_chain, jump, -1)
        dist = np.where(on_chain, dist, 0)
    else:
        reach = jump
    return reach, dist


def scan_add(values: np.ndarray) -> np.ndarray:
    return np.cumsum(values, dtype=np.int64)


def reach_closure(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[0]
    out = adj | np.eye(n, dtype=bool)
    for _ in range(ceil_log2(n)):
        # float32 matmul is exact here: entries are counts below 2**24
        out = (out.astype(np.float32) @ out.astype(np.float32)) > 0.0
    return out
