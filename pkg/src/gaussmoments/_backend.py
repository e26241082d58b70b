"""Kernel backend selection.

Hot loops live in ``_kernels.py`` and are written in nopython-compatible
style.  By default they are compiled with numba; setting ``GM_BACKEND=python``
selects the uncompiled pure-Python/numpy fallback (same source, no JIT).
``benchmarks/bench_backends.py`` compares the two.
"""

from __future__ import annotations

import os
import warnings

BACKEND = os.environ.get("GM_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "python"):
    raise ValueError(f"GM_BACKEND must be 'numba' or 'python', got {BACKEND!r}")

USE_NUMBA = BACKEND == "numba"

if USE_NUMBA:
    # Allow --threads up to 8 even on small hosts (oversubscription is
    # harmless; results are thread-count independent by construction).
    os.environ.setdefault("NUMBA_NUM_THREADS", str(max(os.cpu_count() or 1, 8)))
    try:
        import numba

        # stale-TBB chatter from the threading-layer probe is environment
        # noise, not a correctness signal
        warnings.filterwarnings(
            "ignore", message=".*TBB.*", category=numba.NumbaWarning
        )
        from numba import njit, prange
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    numba = None

    def njit(*args, **kwargs):
        """No-op replacement so kernels run as plain Python."""
        if args and callable(args[0]):
            return args[0]

        def deco(func):
            return func

        return deco

    prange = range


def max_threads() -> int:
    if not USE_NUMBA:
        return 1
    return numba.config.NUMBA_NUM_THREADS


def set_threads(k: int) -> int:
    """Set the worker-pool size; returns the value actually applied.

    Numerical output never depends on this (all reductions are ordered),
    so clamping to the platform maximum is safe.
    """
    if k < 1:
        raise ValueError("thread count must be >= 1")
    if not USE_NUMBA:
        return 1
    k = min(k, max_threads())
    numba.set_num_threads(k)
    return k
