"""Fractions with square denominators in short windows.

The counting function is

    P(alpha) = #{(q, a) : Q < q <= 2Q, gcd(a, q) = 1, |a/q^2 - alpha| <= Delta}

with everything held as exact rationals. To control the supremum of P over
all alpha by finitely many evaluations, a grid of rational approximations
b/r + 1/(k r^2) is built so that every alpha in [0, 1) lies within Delta of
some grid member; the sliding-window supremum is then at most twice the grid
maximum, because a window around alpha sits inside the doubled window around
the covering grid point.

All ceilings, floors and distance comparisons are exact; floats appear only
in convenience accessors.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (
    as_fraction,
    ceil_fraction,
    ceil_sqrt_quotient,
    dist_to_int,
    floor_fraction,
    frac1,
)


def _check_delta(delta: Fraction) -> None:
    if not 0 < delta <= Fraction(1, 2):
        raise ValueError(f"Delta must lie in (0, 1/2], got {delta}")


def grid_k_bounds(r: int, delta: Fraction) -> tuple[int, int]:
    """Smallest and largest grid index |k| admitted for denominator r.

    lower = ceil(Delta^{-1/2} / r), upper = ceil(Delta^{-1} / r^2); both are
    exact integer ceilings (the lower one of an irrational square root).
    """
    lower = ceil_sqrt_quotient(delta.denominator, delta.numerator * r * r)
    upper = ceil_fraction(Fraction(delta.denominator, delta.numerator * r * r))
    return lower, upper


@dataclass(frozen=True)
class ApproxForm:
    """A rational approximation alpha = b/r + z with r <= Delta^{-1/2}.

    For grid members, z = 1/(k r^2) with the signed index k; negative k is
    the mirrored branch below b/r. k is None for plain decompositions.
    """

    b: int
    r: int
    z: Fraction
    delta: Fraction
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", as_fraction(self.z))
        object.__setattr__(self, "delta", as_fraction(self.delta))
        _check_delta(self.delta)
        if self.r < 1:
            raise ValueError("r must be positive")
        if math.gcd(self.b, self.r) != 1:
            raise ValueError(f"b/r = {self.b}/{self.r} is not reduced")
        if self.r * self.r * self.delta > 1:
            raise ValueError(f"r = {self.r} exceeds Delta^(-1/2)")
        if self.z * self.z * self.r * self.r > self.delta:
            raise ValueError(f"|z| = {abs(self.z)} exceeds Delta^(1/2)/r")
        if self.k is not None:
            if self.k == 0:
                raise ValueError("grid index k must be nonzero")
            if self.z != Fraction(1, self.k * self.r * self.r):
                raise ValueError("z disagrees with 1/(k r^2)")
            lower, upper = grid_k_bounds(self.r, self.delta)
            if not lower <= abs(self.k) <= upper:
                raise ValueError(f"|k| = {abs(self.k)} outside [{lower}, {upper}]")

    @property
    def tau(self) -> float:
        return math.sqrt(self.delta.denominator / self.delta.numerator)

    @property
    def value(self) -> Fraction:
        return frac1(Fraction(self.b, self.r) + self.z)


@dataclass(frozen=True)
class CountWindow:
    """Window |a/q^2 - alpha| <= Delta over the dyadic range Q < q <= 2Q."""

    Q: int
    Delta: Fraction
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "Delta", as_fraction(self.Delta))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.Q < 1:
            raise ValueError("Q must be positive")
        _check_delta(self.Delta)


@lru_cache(maxsize=None)
def _coprime_prefix(q: int) -> tuple[int, ...]:
    # pref[i] = #{0 <= a < i : gcd(a, q) = 1}, i = 0..q
    pref = [0] * (q + 1)
    for a in range(q):
        pref[a + 1] = pref[a] + (1 if math.gcd(a, q) == 1 else 0)
    return tuple(pref)


def _count_coprime(lo: int, hi: int, q: int) -> int:
    """#{a in [lo, hi] : gcd(a, q) = 1}, exact for any integer bounds."""
    if hi < lo:
        return 0
    pref = _coprime_prefix(q)
    phi = pref[q]

    def upto(x: int) -> int:  # count on [0, x), valid for negative x too
        return (x // q) * phi + pref[x % q]

    return upto(hi + 1) - upto(lo)


def _window_counts(w: CountWindow, wrap: bool) -> int:
    total = 0
    for q in range(w.Q + 1, 2 * w.Q + 1):
        qq = q * q
        lo = ceil_fraction(qq * (w.alpha - w.Delta))
        hi = floor_fraction(qq * (w.alpha + w.Delta))
        if wrap and hi - lo + 1 > qq:
            hi = lo + qq - 1  # identical residues mod q^2: same point on the circle
        total += _count_coprime(lo, hi, q)
    return total


def count_P(w: CountWindow) -> int:
    """Exact number of pairs (q, a) in the window, one per integer a."""
    return _window_counts(w, wrap=False)


def count_P_wrapped(w: CountWindow) -> int:
    """Window count with distance measured on the circle (residues mod q^2)."""
    return _window_counts(w, wrap=True)


def dirichlet_decompose(alpha, delta) -> ApproxForm:
    """alpha = b/r + z with gcd(b, r) = 1, r <= Delta^{-1/2}, |z| <= Delta^{1/2}/r.

    Takes the last continued-fraction convergent of alpha whose denominator
    still satisfies r^2 Delta <= 1; the following convergent (if any) has a
    larger denominator, which yields the |z| bound.
    """
    alpha = as_fraction(alpha)
    delta = as_fraction(delta)
    _check_delta(delta)
    dnum, dden = delta.numerator, delta.denominator

    p, q = alpha.numerator, alpha.denominator
    h_prev, h_cur = 1, p // q  # convergent numerators
    k_prev, k_cur = 0, 1  # convergent denominators
    rem_p, rem_q = p - (p // q) * q, q  # alpha - a0 = rem_p / rem_q
    best_b, best_r = h_cur, k_cur
    while rem_p != 0:
        # next partial quotient of alpha: invert the remainder
        rem_p, rem_q = rem_q, rem_p
        a = rem_p // rem_q
        rem_p -= a * rem_q
        h_prev, h_cur = h_cur, a * h_cur + h_prev
        k_prev, k_cur = k_cur, a * k_cur + k_prev
        if k_cur * k_cur * dnum > dden:
            break
        best_b, best_r = h_cur, k_cur
    return ApproxForm(
        b=best_b, r=best_r, z=alpha - Fraction(best_b, best_r), delta=delta
    )


def beta_grid(delta) -> list[ApproxForm]:
    """All grid members b/r + 1/(k r^2), reduced mod 1 and deduplicated.

    Ranges: 1 <= b <= r coprime, r <= Delta^{-1/2}, lower <= |k| <= upper from
    grid_k_bounds, both signs of k. Duplicate values keep the representative
    with smallest r, then smallest |k|, preferring k > 0. The result is sorted
    by value, so the grid identity is deterministic.
    """
    delta = as_fraction(delta)
    _check_delta(delta)
    best: dict[Fraction, tuple[tuple[int, int, int], ApproxForm]] = {}
    r = 1
    while r * r * delta <= 1:
        lower, upper = grid_k_bounds(r, delta)
        rr = r * r
        for b in range(1, r + 1):
            if math.gcd(b, r) != 1:
                continue
            for mag in range(lower, upper + 1):
                for k in (mag, -mag):
                    form = ApproxForm(
                        b=b, r=r, z=Fraction(1, k * rr), delta=delta, k=k
                    )
                    rank = (r, mag, 0 if k > 0 else 1)
                    val = form.value
                    kept = best.get(val)
                    if kept is None or rank < kept[0]:
                        best[val] = (rank, form)
        r += 1
    return [form for _, (_, form) in sorted(best.items())]


def covering_distance(alpha, grid_values: list[Fraction]) -> Fraction:
    """Exact distance on the circle from alpha to the nearest grid value."""
    a = frac1(as_fraction(alpha))
    j = bisect_right(grid_values, a)
    cands = []
    if j < len(grid_values):
        cands.append(grid_values[j])
    if j > 0:
        cands.append(grid_values[j - 1])
    cands.append(grid_values[0])
    cands.append(grid_values[-1])
    return min(dist_to_int(a - c) for c in cands)


def window_count_sup(delta, Q: int) -> int:
    """sup over alpha of the circular window count, by an exact sliding scan.

    The supremum is attained with a point at the left window edge, so it
    suffices to scan windows [v, v + 2 Delta] anchored at each point value v
    (as a multiset over pairs (q, residue)).
    """
    delta = as_fraction(delta)
    _check_delta(delta)
    vals: list[Fraction] = []
    for q in range(Q + 1, 2 * Q + 1):
        qq = q * q
        for a in range(1, qq + 1):
            if math.gcd(a, q) == 1:
                vals.append(Fraction(a, qq))
    vals.sort()
    R = len(vals)
    width = 2 * delta
    ext = vals + [v + 1 for v in vals]
    best = 0
    for i, v in enumerate(vals):
        j = bisect_right(ext, v + width, i, i + R)
        best = max(best, j - i)
    return min(best, R)


def K_prime(delta, Q: int) -> int:
    """Maximum circular window count over the approximation grid members."""
    delta = as_fraction(delta)
    grid = beta_grid(delta)
    return max(
        count_P_wrapped(CountWindow(Q=Q, Delta=delta, alpha=form.value))
        for form in grid
    )


def negate_symmetry_check(b: int, r: int, k: int, delta, Q: int) -> bool:
    """Window counts at b/r + 1/(k r^2) and (r-b)/r - 1/(k r^2) must agree.

    The two values are mirror images mod 1 and a -> -a is a gcd-preserving
    bijection of each q-window, so equality is exact; this check computes
    both sides independently.
    """
    delta = as_fraction(delta)
    z = Fraction(1, k * r * r)
    plus = Fraction(b, r) + z
    minus = Fraction(r - b, r) - z
    cp = count_P(CountWindow(Q=Q, Delta=delta, alpha=plus))
    cm = count_P(CountWindow(Q=Q, Delta=delta, alpha=minus))
    return cp == cm
