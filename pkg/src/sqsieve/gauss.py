"""Quadratic Gauss sums: direct evaluation, shift transforms, magnitude bound.

G(a, l; c) = sum_{d mod c} e((a d^2 + l d)/c). Ground truth everywhere is the
direct c-term sum with exact integer phases; the transforms below rewrite
general l in terms of l = 0 (even) or l = 1 (odd) by completing the square
with the inverse of a mod c, and |G(a, l; c)| <= 2 sqrt(c) whenever
gcd(a, c) = 1. Sweeps use the backend row kernel, which is the same direct
summation vectorized over l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import backend
from .exact import e_int_phase, fsum_complex


@dataclass(frozen=True)
class GaussSumSpec:
    """Parameters (a, l, c), stored reduced mod c."""

    a: int
    l: int
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("modulus c must be positive")
        object.__setattr__(self, "a", self.a % self.c)
        object.__setattr__(self, "l", self.l % self.c)

    def require_coprime(self) -> None:
        if math.gcd(self.a, self.c) != 1:
            raise ValueError(f"a = {self.a} is not invertible mod c = {self.c}")


def gauss_direct(spec: GaussSumSpec) -> complex:
    """The literal d-sum with exact rationally reduced phases."""
    a, l, c = spec.a, spec.l, spec.c
    return fsum_complex(
        e_int_phase((a * d * d + l * d) % c, c) for d in range(c)
    )


def gauss_transform_even(spec: GaussSumSpec) -> complex:
    """G(a, l; c) for even l as e(-abar (l^2/4) / c) G(a, 0; c).

    Completing the square with shift abar l/2 maps the d-sum onto the l = 0
    sum; l^2/4 is integral, so the phase lives in (1/c) Z as written.
    """
    spec.require_coprime()
    if spec.l % 2 != 0:
        raise ValueError("transform requires even l")
    abar = pow(spec.a, -1, spec.c)
    shift = (abar * (spec.l * spec.l // 4)) % spec.c
    base = gauss_direct(GaussSumSpec(spec.a, 0, spec.c))
    return e_int_phase(-shift % spec.c, spec.c) * base


def gauss_transform_odd(spec: GaussSumSpec) -> complex:
    """G(a, l; c) for odd l as e(-abar ((l^2-1)/4) / c) G(a, 1; c)."""
    spec.require_coprime()
    if spec.l % 2 != 1:
        raise ValueError("transform requires odd l")
    abar = pow(spec.a, -1, spec.c)
    shift = (abar * ((spec.l * spec.l - 1) // 4)) % spec.c
    base = gauss_direct(GaussSumSpec(spec.a, 1, spec.c))
    return e_int_phase(-shift % spec.c, spec.c) * base


def gauss_transform(spec: GaussSumSpec) -> complex:
    """Either transform, dispatched on the parity of l."""
    if spec.l % 2 == 0:
        return gauss_transform_even(spec)
    return gauss_transform_odd(spec)


def bound_excess(c_max: int) -> float:
    """max over c <= c_max, gcd(a,c)=1, all l of |G(a,l;c)| - 2 sqrt(c)."""
    if c_max < 1:
        raise ValueError("c_max must be positive")
    worst = -math.inf
    for c in range(1, c_max + 1):
        cap = 2.0 * math.sqrt(c)
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            row = backend.gauss_row(a % c, c)
            worst = max(worst, float(abs(row).max()) - cap)
    return worst


def gauss_bound_check(c_max: int) -> bool:
    """True iff the 2 sqrt(c) bound holds across the exhaustive sweep."""
    return bound_excess(c_max) <= 1e-9


def transform_deviation(c_max: int) -> float:
    """max |transform - direct| / max(1, |direct|) over the exhaustive sweep.

    The direct side comes from the row kernel; the transform side is built
    from the l = 0 and l = 1 sums and an exact phase, so the two sides share
    no intermediate values beyond those anchors.
    """
    if c_max < 1:
        raise ValueError("c_max must be positive")
    worst = 0.0
    for c in range(1, c_max + 1):
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            row = backend.gauss_row(a % c, c)
            abar = pow(a, -1, c)
            even_base = complex(row[0])
            odd_base = complex(row[1 % c])
            for l in range(c):
                if l % 2 == 0:
                    shift = (abar * (l * l // 4)) % c
                    xform = e_int_phase(-shift % c, c) * even_base
                else:
                    shift = (abar * ((l * l - 1) // 4)) % c
                    xform = e_int_phase(-shift % c, c) * odd_base
                direct = complex(row[l])
                dev = abs(xform - direct) / max(1.0, abs(direct))
                worst = max(worst, dev)
    return worst
