"""Numba switch.

Kernels are written once as plain Python over numpy arrays. When numba is
importable and ``DROPCLIQUE_DISABLE_NUMBA`` is unset (or ``0``), they are
compiled with ``numba.njit``; otherwise the same source runs interpreted.
"""
from __future__ import annotations

import os

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAS_NUMBA = False

_flag = os.environ.get("DROPCLIQUE_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = HAS_NUMBA and _flag in ("", "0", "false", "no")


def jit(fn):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend() -> str:
    return "numba" if USE_NUMBA else "python"
