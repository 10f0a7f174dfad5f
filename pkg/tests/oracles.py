"""Independent reference implementations used only by the test suite.

Each oracle recomputes a quantity by a different route than the library
(naive loops, dense eigensolvers, closed forms), so agreement is meaningful.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np


def eval_S_brute(coeffs, M: int, x: float) -> complex:
    """Direct float-phase evaluation of S(x); adequate for small M+N."""
    total = 0.0 + 0.0j
    for i, c in enumerate(coeffs):
        n = M + 1 + i
        total += complex(c) * cmath.exp(2j * cmath.pi * (x * n))
    return total


def gram_brute(values, M: int, N: int) -> np.ndarray:
    """Gram matrix by literal summation over n (no geometric closed form)."""
    R = len(values)
    T = np.empty((R, R), dtype=complex)
    for r in range(R):
        for s in range(R):
            d = values[r] - values[s]
            acc = 0.0 + 0.0j
            for n in range(M + 1, M + N + 1):
                ph = (d * n) % 1
                acc += cmath.exp(2j * cmath.pi * float(ph))
            T[r, s] = acc
    return T


def lambda_max_dense(T: np.ndarray) -> float:
    """Largest eigenvalue via the dense Hermitian eigensolver."""
    return float(np.linalg.eigvalsh(T)[-1])


def count_P_naive(alpha: Fraction, Q: int, Delta: Fraction) -> int:
    """Counting by a gcd-filtered double loop over a generous a-range."""
    total = 0
    for q in range(Q + 1, 2 * Q + 1):
        q2 = q * q
        for a in range(-2 * q2, 2 * q2 + 1):
            if math.gcd(a, q) == 1 and abs(Fraction(a, q2) - alpha) <= Delta:
                total += 1
    return total


def count_wrapped_naive(alpha: Fraction, Q: int, Delta: Fraction) -> int:
    """Circular window count over residues mod q^2, by direct enumeration."""
    total = 0
    for q in range(Q + 1, 2 * Q + 1):
        q2 = q * q
        for a in range(1, q2 + 1):
            if math.gcd(a, q) != 1:
                continue
            d = (Fraction(a, q2) - alpha) % 1
            if min(d, 1 - d) <= Delta:
                total += 1
    return total


def lattice_sum_brute(c: Fraction, h: Fraction, radius: int) -> float:
    """Kernel lattice sum by a plain float loop around round(c)."""
    total = 0.0
    cf = float(c)
    hf = float(h)
    for a in range(round(c) - radius, round(c) + radius + 1):
        x = (a - cf) / hf
        if x == 0.0:
            total += math.pi * math.pi / 4.0
        else:
            s = math.sin(math.pi * x)
            total += s * s / (4.0 * x * x)
    return total


def gauss_brute(a: int, l: int, c: int) -> complex:
    """G(a, l; c) term by term with exact integer phases."""
    acc = 0.0 + 0.0j
    for d in range(c):
        acc += cmath.exp(2j * cmath.pi * (((a * d * d + l * d) % c) / c))
    return acc


def congruence_count_modular(inst) -> int:
    """Per-(j*, l) modular solve; counts h in [H, 2H] hitting each residue class."""
    total = 0
    base = inst.kstar * inst.rstar + inst.a

    def count_h(m, j):
        # number of h in [H, 2H] with h = m (mod j)
        return (2 * inst.H - m) // j - (inst.H - 1 - m) // j

    for jstar in range(inst.J + 1, 2 * inst.J + 1):
        if math.gcd(jstar, inst.rstar) != 1:
            continue
        rinv = pow(inst.rstar, -1, jstar)
        for l in range(1, inst.l_max + 1):
            mp = (base * l * rinv) % jstar
            mm = (-base * l * rinv) % jstar
            total += count_h(mp, jstar)
            if mm != mp:
                total += count_h(mm, jstar)
    return total


def osc_integral_mp(A, B, Nw, dps: int = 30) -> complex:
    """int_0^inf e^(-y/Nw) e(Ay - B sqrt(y)) dy on the real axis, piecewise mpmath.

    After x = sqrt(y) the pieces are sized to one oscillation cycle of the
    local phase, each handled by tanh-sinh quadrature; no contour argument
    is involved. Only viable for desk-scale A, B, Nw.
    """
    import mpmath as mp

    with mp.workdps(dps):
        cut = float(mp.sqrt(Nw * mp.log(1e28)))
        f = lambda x: 2 * x * mp.e ** (-x * x / Nw) * mp.expjpi(2 * (A * x * x - B * x))
        total = mp.mpc(0)
        x = 0.0
        while x < cut:
            w = min(1.0 / (1.0 + abs(2 * A * x - B)), cut - x, 1.0)
            total += mp.quad(f, [x, x + w])
            x += w
        return complex(total)
