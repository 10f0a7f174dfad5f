"""Weyl-shift inequality for quadratic exponential sums, and congruence counting.

weyl_shift_check verifies, instance by instance, the degree-2 shift bound

    |sum_{n in I} e(alpha n^2)|^2 <= 16 N + 4 sum_{r=1}^{N-1} min(N, 1/||2 alpha r||)

with the left side summed directly in exact integer phases and the right side
selected in exact rationals (no floating ties at ||.|| = 1/2 or 0).

count_congruence_solutions counts triples (j*, l, h) with J < j* <= 2J coprime
to r*, 1 <= l <= l_max, H <= h <= 2H satisfying

    +-(k* r* + a) l = h r*  (mod j*)

as a union over the two signs, by an honest triple loop; the dyadic budget
sqrt(Q0) J z r H times the smoothing slack is checked by congruence_bound_check
with the conformance constant C_test = 10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import as_fraction, e_int_phase, fsum_complex

C_TEST = 10.0


@dataclass(frozen=True)
class WeylInstance:
    """A quadratic exponential sum over the integer interval [start, start+N-1]."""

    alpha: Fraction
    N: int
    start: int = 1
    k: int = 2

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.k < 2:
            raise ValueError("degree k must be at least 2")

    @property
    def kappa(self) -> int:
        return 2 ** (self.k - 1)


def weyl_shift_check(w: WeylInstance) -> tuple[float, float, bool]:
    """(lhs, rhs, lhs <= rhs + 1e-6) for the degree-2 shift inequality."""
    if w.k != 2:
        raise ValueError("only the quadratic case k = 2 is implemented")
    p = w.alpha.numerator
    q = w.alpha.denominator
    total = fsum_complex(
        e_int_phase((p * n * n) % q, q) for n in range(w.start, w.start + w.N)
    )
    lhs = abs(total) ** 2

    # rhs = 16N + 4 sum min(N, 1/||2 alpha r||); the min is decided on
    # integers: with ||2 alpha r|| = num/q, num = min(m, q-m), the reciprocal
    # wins exactly when q < N * num
    N = w.N
    terms = []
    for r in range(1, N):
        m = (2 * p * r) % q
        num = min(m, q - m)
        if num == 0 or q >= N * num:
            terms.append(float(N))
        else:
            terms.append(q / num)
    rhs = 16.0 * N + 4.0 * math.fsum(terms)
    return lhs, rhs, lhs <= rhs + 1e-6


def quad_weyl_sum(a_num: int, modulus: int, x_max: int) -> complex:
    """sum_{0 < l <= x_max} e(a_num l^2 / modulus) by direct summation."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    return fsum_complex(
        e_int_phase((a_num * l * l) % modulus, modulus) for l in range(1, x_max + 1)
    )


@dataclass(frozen=True)
class CongruenceInstance:
    """Ranges and arithmetic data of the dyadic congruence count.

    l_max defaults to floor(4 * eps_factor * sqrt(Q0) * J * z * r), the range
    the counting argument works with; passing it explicitly keeps the count
    free of any smoothing-exponent interpretation.
    """

    J: int
    H: int
    a: int
    kstar: int
    rstar: int
    z: Fraction
    r: int
    Q0: float
    eps_factor: float = 1.0
    l_max: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "z", as_fraction(self.z))
        for name in ("J", "H", "kstar", "rstar", "r"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not 1 <= self.a <= self.rstar:
            raise ValueError("need 1 <= a <= r*")
        if math.gcd(self.kstar * self.rstar + self.a, self.rstar) != 1:
            raise ValueError("k* r* + a must be coprime to r*")
        if self.z <= 0:
            raise ValueError("z must be positive")
        if self.Q0 < 1:
            raise ValueError("Q0 must be >= 1")
        if self.l_max is None:
            cap = 4 * self.eps_factor * math.sqrt(self.Q0) * self.J * float(self.z) * self.r
            object.__setattr__(self, "l_max", int(math.floor(cap)))
        if self.l_max < 0:
            raise ValueError("l_max must be nonnegative")


def count_congruence_solutions(
    c: CongruenceInstance, signs: tuple[int, ...] = (1, -1)
) -> int:
    """Exact triple-loop count of (j*, l, h) solving the signed congruence.

    A triple satisfying both signs at once is counted once (union semantics).
    """
    base = c.kstar * c.rstar + c.a
    count = 0
    for jstar in range(c.J + 1, 2 * c.J + 1):
        if math.gcd(jstar, c.rstar) != 1:
            continue
        for l in range(1, c.l_max + 1):
            residues = {(s * base * l) % jstar for s in signs}
            for h in range(c.H, 2 * c.H + 1):
                if (h * c.rstar) % jstar in residues:
                    count += 1
    return count


def congruence_bound_check(c: CongruenceInstance) -> tuple[int, float, bool]:
    """(count, budget, count <= budget) with budget = C_test sqrt(Q0) J z r H slack."""
    count = count_congruence_solutions(c)
    budget = (
        C_TEST
        * math.sqrt(c.Q0)
        * c.J
        * float(c.z)
        * c.r
        * c.H
        * c.eps_factor
    )
    return count, budget, count <= budget
