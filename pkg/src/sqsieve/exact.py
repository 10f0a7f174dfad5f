"""Exact rational phase arithmetic shared by the sieve modules.

Everything that touches e(x) = exp(2*pi*i*x) reduces the argument mod 1 in
exact rational arithmetic first, so phases stay accurate for arguments far
larger than float precision would allow.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

TWO_PI = 2.0 * math.pi


def as_fraction(x) -> Fraction:
    """Coerce int/float/str/Fraction to an exact Fraction (floats are exact binary)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def frac1(x: Fraction) -> Fraction:
    """Reduce to [0, 1)."""
    return x - (x.numerator // x.denominator)


def sym_frac(x: Fraction) -> Fraction:
    """Reduce to (-1/2, 1/2]."""
    f = frac1(x)
    return f - 1 if 2 * f.numerator > f.denominator else f


def dist_to_int(x: Fraction) -> Fraction:
    """||x||: distance to the nearest integer (1/2 at the tie)."""
    f = frac1(x)
    return min(f, 1 - f)


def e_frac(x: Fraction) -> complex:
    """e(x) for exact rational x, reduced mod 1 before any float work."""
    f = frac1(x)
    t = TWO_PI * (f.numerator / f.denominator)
    return complex(math.cos(t), math.sin(t))


def e_int_phase(num: int, den: int) -> complex:
    """e(num/den) with integer reduction mod den."""
    t = TWO_PI * ((num % den) / den)
    return complex(math.cos(t), math.sin(t))


def e_minus_one(x: Fraction) -> complex:
    """e(x) - 1, stable near integers (uses the symmetric reduction)."""
    s = sym_frac(x)
    sf = s.numerator / s.denominator
    return complex(-2.0 * math.sin(math.pi * sf) ** 2, math.sin(TWO_PI * sf))


def geom_char_sum(d: Fraction, M: int, N: int) -> complex:
    """sum_{n=M+1}^{M+N} e(d*n) by the geometric closed form (N if d is integral)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if d.denominator == 1:
        return complex(N)
    num = e_minus_one(d * N)
    den = e_minus_one(d)
    return e_frac(d * (M + 1)) * num / den


def ceil_sqrt_quotient(p: int, q: int) -> int:
    """Smallest integer m >= sqrt(p/q) for positive integers p, q."""
    if p <= 0:
        return 0
    m = math.isqrt((p + q - 1) // q)
    while m * m * q < p:
        m += 1
    while m >= 1 and (m - 1) * (m - 1) * q >= p:
        m -= 1
    return m


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def fsum_complex(values) -> complex:
    """Compensated complex sum (math.fsum on both components)."""
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def phase_array(num: int, den: int, n: np.ndarray) -> np.ndarray:
    """(num*n mod den)/den as float64 for an int64 index array, overflow-safe."""
    num %= den
    if num < 2**62 // max(int(n.max(initial=0)), 1) and den < 2**62:
        ph = (num * n.astype(np.int64)) % den
        return ph.astype(np.float64) / den
    # big denominators: exact per-element Python integers
    return np.array([((num * int(k)) % den) / den for k in n], dtype=np.float64)
