"""A Fejer-type kernel, its transform, and a two-sided summation identity.

The kernel is phi(x) = (sin(pi x) / (2x))^2 with phi(0) = pi^2/4. Its
transform is the hat function phi_hat(s) = (pi^2/4) max(1 - |s|, 0), so the
dual side of Poisson summation is a finite sum. The identity checked here is

    sum_{a in Z} phi((a - c)/h) = h * sum_{|j| < 1/h} phi_hat(h j) e(j c)

summed over c = alpha q^2 for q in a dyadic block, with h = 8 Q^2 Delta.
phi(x) >= 1 on |x| <= 1/2, which makes the left side a majorant for the
window count of farey.count_P.

The lattice sum on the left has two routes:

* lattice_sum: exact closed form by partial fractions. Splitting
  sin^2 = (1 - cos)/2 reduces the sum to sum 1/(a-c)^2 = pi^2/sin^2(pi c)
  and a twisted companion with the closed form
  sum_a e^(i w a)/(a-c)^2 = (pi/sin(pi c)) e^(i c (w - pi)) (pi cot(pi c)
  + i (pi - w)) for w in [0, 2 pi]; larger w reduces mod 2 pi against
  integer a. Evaluated in mpmath with precision scaled to the distance
  from c to the nearest integer (the two pieces cancel to O(h^2) there).
* lattice_sum_direct: truncated summation with the tail bounded through
  phi(x) <= 1/(4 x^2). The required radius grows like h^2/tol, so this
  route refuses (TruncationBudgetError) when the budget is out of reach;
  it exists to cross-check the closed form where it is affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .exact import as_fraction, ceil_fraction, floor_fraction, frac1
from .farey import CountWindow, count_P

_QUARTER_PI_SQ = math.pi * math.pi / 4
_SERIES_CUTOFF = 1e-4


def phi(x: float) -> float:
    """(sin(pi x) / (2 x))^2 with the removable singularity filled in."""
    x = float(x)
    if abs(x) < _SERIES_CUTOFF:
        t = (math.pi * x) ** 2
        return _QUARTER_PI_SQ * (1.0 - t / 3.0 + 2.0 * t * t / 45.0)
    s = math.sin(math.pi * x)
    return (s * s) / (4.0 * x * x)


def phi_hat(s: float) -> float:
    """Transform of phi: a hat of height pi^2/4 supported on [-1, 1]."""
    return _QUARTER_PI_SQ * max(1.0 - abs(float(s)), 0.0)


@dataclass(frozen=True)
class KernelEval:
    """A checked kernel sample: nonnegative, and >= 1 on |x| <= 1/2."""

    x: float
    value: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("kernel value must be nonnegative")
        if abs(self.x) <= 0.5 and self.value < 1.0 - 1e-12:
            raise ValueError("kernel must dominate 1 on [-1/2, 1/2]")

    @classmethod
    def at(cls, x: float) -> "KernelEval":
        return cls(float(x), phi(x))


class TruncationBudgetError(RuntimeError):
    """Direct summation cannot reach the tolerance within the term budget."""

    def __init__(self, required_terms: int, budget: int):
        self.required_terms = required_terms
        self.budget = budget
        super().__init__(
            f"tail bound needs {required_terms} terms/side, budget {budget}"
        )


def _extra_dps(fdist: Fraction) -> int:
    # the closed form cancels to O(h^2) near integer c; add digits to cover
    # the ~ (1/fdist)^2 blowup of the two pieces
    if fdist == 0:
        return 0
    inv = fdist.denominator // fdist.numerator
    return max(0, 2 * len(str(inv)))


def lattice_sum(c, h) -> float:
    """sum over all integers a of phi((a - c)/h), by the exact closed form."""
    c = as_fraction(c)
    h = as_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    inv = 1 / h
    m = floor_fraction(inv)
    theta = inv - m  # fractional part of 1/h, exact
    f = frac1(c)
    if f == 0:
        with mp.workdps(30):
            x = mp.mpf(theta.numerator) / theta.denominator
            hh = mp.mpf(h.numerator) / h.denominator
            val = mp.pi**2 / 4 + (hh**2 / 8) * (
                mp.pi**2 / 3 - 2 * mp.pi**2 * (x * x - x + mp.mpf(1) / 6)
            )
            return float(val)
    fdist = min(f, 1 - f)
    with mp.workdps(30 + _extra_dps(fdist)):
        ff = mp.mpf(f.numerator) / f.denominator
        hh = mp.mpf(h.numerator) / h.denominator
        s = mp.sinpi(ff)
        cot = mp.cospi(ff) / s
        S2 = mp.pi**2 / s**2
        omega_r = 2 * mp.pi * (mp.mpf(theta.numerator) / theta.denominator)
        mc = frac1(c * m)
        phase = mp.expjpi(-2 * (mp.mpf(mc.numerator) / mc.denominator))
        twisted = mp.pi * phase * (mp.expjpi(-ff) / s) * (
            mp.pi * cot + 1j * (mp.pi - omega_r)
        )
        val = (hh**2 / 8) * (S2 - mp.re(twisted))
        return float(val)


def lattice_sum_direct(c, h, tol: float = 1e-10, max_terms: int = 2_000_000) -> float:
    """Same sum by truncation; the tail beyond radius X is <= h^2/(2(X-1))."""
    c = as_fraction(c)
    h = as_fraction(h)
    if h <= 0:
        raise ValueError("h must be positive")
    hf = float(h)
    radius = int(math.ceil(hf * hf / (2.0 * tol))) + 2
    radius = max(radius, int(2 * hf) + 2)
    if radius > max_terms:
        raise TruncationBudgetError(radius, max_terms)
    center = round(c)
    cf = float(c - center)  # exact small residue, safe in float
    return math.fsum(
        phi((d - cf) / hf) for d in range(-radius, radius + 1)
    )


def _identity_sides(alpha, Q: int, Delta, method: str, tol: float, max_terms: int):
    alpha = as_fraction(alpha)
    Delta = as_fraction(Delta)
    if Q < 1:
        raise ValueError("Q must be positive")
    h = 8 * Q * Q * Delta
    if h <= 0:
        raise ValueError("8 Q^2 Delta must be positive")

    if method == "closed":
        lhs_inner = lambda c: lattice_sum(c, h)
    elif method == "direct":
        lhs_inner = lambda c: lattice_sum_direct(c, h, tol=tol, max_terms=max_terms)
    else:
        raise ValueError(f"unknown method {method!r}")
    lhs = math.fsum(lhs_inner(alpha * q * q) for q in range(Q + 1, 2 * Q + 1))

    J = ceil_fraction(1 / h) - 1  # strict |j| < 1/h: zero-weight boundary dropped
    hf = float(h)
    terms = []
    for q in range(Q + 1, 2 * Q + 1):
        terms.append(phi_hat(0.0))
        qq = q * q
        for j in range(1, J + 1):
            weight = phi_hat(float(h * j))
            ph = frac1(alpha * j * qq)
            terms.append(2.0 * weight * math.cos(2.0 * math.pi * float(ph)))
    rhs = hf * math.fsum(terms)
    return lhs, rhs


def poisson_identity_residual(
    alpha,
    Q: int,
    Delta,
    method: str = "closed",
    tol: float = 1e-10,
    max_terms: int = 2_000_000,
) -> float:
    """|LHS - RHS| of the summation identity, the two sides fully independent."""
    lhs, rhs = _identity_sides(alpha, Q, Delta, method, tol, max_terms)
    return abs(lhs - rhs)


def majorize_P_check(w: CountWindow) -> bool:
    """count_P(w) <= sum_q lattice_sum(alpha q^2, 8 Q^2 Delta), with 1e-9 slack.

    Every counted pair has |a - alpha q^2| <= q^2 Delta <= h/2, where the
    kernel is >= 1; all other terms are nonnegative.
    """
    h = 8 * w.Q * w.Q * w.Delta
    kernel_side = math.fsum(
        lattice_sum(w.alpha * q * q, h) for q in range(w.Q + 1, 2 * w.Q + 1)
    )
    return count_P(w) <= kernel_side + 1e-9
