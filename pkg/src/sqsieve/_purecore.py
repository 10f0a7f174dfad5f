"""Pure NumPy implementations of the hot kernels.

These are the fallback twins of the compiled kernels in _fastcore; both sides
compute the same exact-integer-phase sums, so results agree to floating
round-off. Selection happens in sqsieve.backend.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def phase_moments(nums, dens, count: int) -> np.ndarray:
    """w[d] = sum_r e(nums[r]*d / dens[r]) for d = 0..count-1.

    Phases are reduced with exact integer arithmetic per point before the
    complex exponential, so large d stays accurate.
    """
    w = np.zeros(count, dtype=np.complex128)
    d = np.arange(count, dtype=np.int64)
    for a, den in zip(nums, dens):
        a = int(a) % int(den)
        den = int(den)
        if a * (count - 1) < 2**62 and den < 2**63:
            ph = (a * d) % den
            w += np.exp((TWO_PI * 1j / den) * ph)
        else:
            ph = np.array([(a * int(k)) % den for k in d], dtype=np.float64)
            w += np.exp((TWO_PI * 1j / den) * ph)
    return w


def gauss_row(a: int, c: int) -> np.ndarray:
    """G(a, l; c) = sum_{d mod c} e((a d^2 + l d)/c) for all l = 0..c-1.

    Literal direct summation over d with an exact integer phase table;
    no transform shortcuts.
    """
    a = int(a) % c
    d = np.arange(c, dtype=np.int64)
    if c >= 2**21:
        raise ValueError("modulus too large for the int64 phase table")
    base = (a * d * d) % c
    table = np.exp((TWO_PI * 1j / c) * np.arange(c))
    # rows indexed by l, columns by d
    ph = (base[None, :] + np.outer(d, d)) % c
    return table[ph].sum(axis=1)
