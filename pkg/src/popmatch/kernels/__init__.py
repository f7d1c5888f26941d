"""Interchangeable backends for the data-parallel kernels.

Three implementations of the same three kernels (pointer doubling, prefix
scan, boolean reachability closure):

* ``numba``  - JIT-compiled loops, the default when numba imports cleanly
* ``numpy``  - vectorized fallback, forced with ``POPMATCH_NUMBA=0``
* ``scalar`` - plain Python loops, used by the sequential engine mode

All three are bit-identical on every input; the engine and the test suite
rely on that.
"""

from __future__ import annotations

import os

_OFF_VALUES = ("0", "false", "off", "no")


def ceil_log2(n: int) -> int:
    """Smallest k with 2**k >= n, and 0 for n <= 1."""
    if n <= 1:
        return 0
    return int(n - 1).bit_length()


def numba_enabled() -> bool:
    """True unless POPMATCH_NUMBA is set to an off value or numba is absent."""
    flag = os.environ.get("POPMATCH_NUMBA", "").strip().lower()
    if flag in _OFF_VALUES:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def get_backend(name: str):
    """Return the kernel module for ``name`` in {numba, numpy, scalar}."""
    if name == "numba":
        from . import _numba
        return _numba
    if name == "numpy":
        from . import _numpy
        return _numpy
    if name == "scalar":
        from . import _scalar
        return _scalar
    raise ValueError(f"unknown kernel backend {name!r}")


def default_backend_name() -> str:
    return "numba" if numba_enabled() else "numpy"
