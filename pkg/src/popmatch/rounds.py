"""Round-synchronous execution engine.

Every parallel step in this package is a *round*: a pure function applied to
a snapshot of the pre-round state, with all writes committed together at the
round barrier.  A round may be executed with real data parallelism or one
element at a time; the result is identical either way, which is what makes
the ``--seq`` differential mode meaningful.

The engine exposes four primitives and counts rounds and element operations
per named phase:

* ``par_map``          - one round, one op per item
* ``successor_double`` - pointer jumping, ceil(log2 n) rounds
* ``prefix_sum``       - inclusive scan, ceil(log2 n) rounds
* ``bool_closure``     - reachability by squaring, ceil(log2 n) rounds
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .kernels import ceil_log2


class RoundStats:
    """Per-phase counters of synchronous rounds and elementwise operations."""

    def __init__(self) -> None:
        self._phases: dict[str, list[int]] = {}

    def bump(self, phase: str, rounds: int, ops: int) -> None:
        entry = self._phases.setdefault(phase, [0, 0])
        entry[0] += rounds
        entry[1] += ops

    def rounds(self, phase: str) -> int:
        return self._phases.get(phase, [0, 0])[0]

    def ops(self, phase: str) -> int:
        return self._phases.get(phase, [0, 0])[1]

    def phases(self) -> list[str]:
        return sorted(self._phases)

    def lines(self) -> list[str]:
        return [f"{p} {e[0]} {e[1]}" for p, e in sorted(self._phases.items())]

    def as_dict(self) -> dict[str, tuple[int, int]]:
        return {p: (e[0], e[1]) for p, e in self._phases.items()}


class Engine:
    """Executes rounds and accumulates RoundStats.

    mode "par" runs the vectorized kernels (numba by default, numpy when
    POPMATCH_NUMBA is off); mode "seq" runs the plain-loop reference kernels.
    Outputs are bit-identical across modes and backends.
    """

    def __init__(self, mode: str = "par", backend: str | None = None,
                 stats: RoundStats | None = None) -> None:
        if mode not in ("par", "seq"):
            raise ValueError(f"unknown engine mode {mode!r}")
        self.mode = mode
        if mode == "seq":
            self.backend_name = "scalar"
        else:
            self.backend_name = backend or kernels.default_backend_name()
        self._kernels = kernels.get_backend(self.backend_name)
        self.stats = stats if stats is not None else RoundStats()

    def par_map(self, items: Sequence | Iterable, fn: Callable,
                phase: str = "par_map") -> list:
        """Apply fn to every item in one round; fn must only read
        pre-round state and must not depend on application order."""
        items = list(items)
        out = [fn(x) for x in items]
        self.stats.bump(phase, 1, len(items))
        return out

    def successor_double(self, nxt, phase: str = "double"):
        """Terminal vertex and distance for every chain vertex of a
        functional graph; (-1, 0) for vertices on cycles.

        nxt[v] is v's successor or -1.  Runs ceil(log2 n) doubling rounds.
        """
        arr = np.asarray(nxt, dtype=np.int64)
        n = len(arr)
        rounds = ceil_log2(n)
        self.stats.bump(phase, rounds, rounds * n)
        return self._kernels.pointer_double(arr)

    def prefix_sum(self, values, phase: str = "scan") -> np.ndarray:
        """Inclusive prefix sums in ceil(log2 n) rounds."""
        arr = np.asarray(values, dtype=np.int64)
        n = len(arr)
        rounds = ceil_log2(n)
        self.stats.bump(phase, rounds, rounds * n)
        return self._kernels.scan_add(arr)

    def bool_closure(self, adj, phase: str = "closure") -> np.ndarray:
        """Reflexive-transitive closure of a boolean adjacency matrix,
        by squaring (I | A) ceil(log2 n) times.  Idempotent."""
        mat = np.asarray(adj, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("bool_closure expects a square matrix")
        n = mat.shape[0]
        rounds = ceil_log2(n)
        self.stats.bump(phase, rounds, rounds * n * n)
        return self._kernels.reach_closure(mat)
