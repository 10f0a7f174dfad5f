"""Kernel backend selection.

The compiled extension (_fastcore) is used when it imported cleanly and the
arguments fit its int64 contract; otherwise the pure NumPy twins take over.
Set SQSIEVE_PURE=1 to force the pure path (used by tests and benchmarks).
"""

from __future__ import annotations

import os

import numpy as np

from . import _purecore

try:
    from . import _fastcore

    HAVE_COMPILED = True
except ImportError:  # extension not built; pure fallback is complete
    _fastcore = None
    HAVE_COMPILED = False


def _use_compiled() -> bool:
    if os.environ.get("SQSIEVE_PURE", "") not in ("", "0"):
        return False
    return HAVE_COMPILED


def active_backend() -> str:
    return "compiled" if _use_compiled() else "pure"


def phase_moments(nums, dens, count: int) -> np.ndarray:
    """w[d] = sum_r e(nums[r]*d / dens[r]), d = 0..count-1."""
    if count < 1:
        return np.zeros(0, dtype=np.complex128)
    if _use_compiled() and max((int(d) for d in dens), default=1) < 2**62:
        return _fastcore.phase_moments(
            np.asarray(nums, dtype=np.int64), np.asarray(dens, dtype=np.int64), count
        )
    return _purecore.phase_moments(nums, dens, count)


def gauss_row(a: int, c: int) -> np.ndarray:
    """G(a, l; c) for all residues l, by direct summation."""
    if _use_compiled() and c < 2**31:
        return _fastcore.gauss_row(a, c)
    return _purecore.gauss_row(a, c)
