"""Trigonometric sums over Farey points and the extremal constant of the sieve form.

The central object is the quadratic form sum_r |S(alpha_r)|^2 with
S(x) = sum_{n=M+1}^{M+N} a_n e(xn) over a finite point set {alpha_r}. Its
sharp constant relative to Z = sum |a_n|^2 is the largest eigenvalue of the
R x R Gram matrix T_{rs} = sum_n e((alpha_r - alpha_s) n).

Two equivalent routes to lambda_max are implemented and cross-checked:

* "gram": materialize T by the geometric closed form and power-iterate it.
* "toeplitz": power-iterate the N x N dual W with W_{nm} = w(n - m),
  w(d) = sum_r e(alpha_r d). W = V V^H and T = V^H V for the same phase
  matrix V, so the nonzero spectra coincide; the matvec is an FFT circular
  convolution, which is what makes the large dyadic point sets affordable.

lambda_max does not depend on M: changing M conjugates T by a diagonal
unitary. M stays a free parameter of the sums themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import backend
from .exact import as_fraction, frac1, fsum_complex, phase_array

_COMPENSATED_CUTOFF = 10_000
_GRAM_AUTO_CAP = 600


class PowerIterationError(RuntimeError):
    """Raised when power iteration fails to meet the Rayleigh stopping rule."""

    def __init__(self, iterations: int, bracket: tuple[float, float]):
        self.iterations = iterations
        self.bracket = bracket
        super().__init__(
            f"power iteration did not converge in {iterations} iterations; "
            f"last Rayleigh bracket {bracket}"
        )


@dataclass(frozen=True)
class Sequence:
    """Finite coefficient sequence a_{M+1}, ..., a_{M+N}."""

    M: int
    N: int
    coeffs: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if len(self.coeffs) != self.N:
            raise ValueError("coeffs must have exactly N entries")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def Z(self) -> float:
        return math.fsum(abs(c) ** 2 for c in self.coeffs)

    def support(self) -> np.ndarray:
        return np.arange(self.M + 1, self.M + self.N + 1, dtype=np.int64)


@dataclass(frozen=True)
class FareyPoint:
    """Reduced fraction a/q^k with gcd(a, q) = 1, 1 <= a <= q^k, k in {1, 2}."""

    a: int
    q: int
    k: int

    def __post_init__(self):
        if self.k not in (1, 2):
            raise ValueError("exponent k must be 1 or 2")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if not (1 <= self.a <= self.q**self.k):
            raise ValueError("need 1 <= a <= q^k")
        if math.gcd(self.a, self.q) != 1:
            raise ValueError("a and q must be coprime")

    @property
    def value(self) -> Fraction:
        # gcd(a, q) = 1 implies gcd(a, q^k) = 1: already in lowest terms
        return Fraction(self.a, self.q**self.k)


class PointSet:
    """Ordered set of distinct phases, each reduced to [0, 1)."""

    def __init__(self, values: Iterable[Fraction]):
        vals = tuple(frac1(as_fraction(v)) for v in values)
        if len(set(vals)) != len(vals):
            raise ValueError("duplicate points are not allowed")
        self.values = vals

    @classmethod
    def from_farey(cls, points: Iterable[FareyPoint]) -> "PointSet":
        return cls(p.value for p in points)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def numerators(self) -> list:
        return [v.numerator for v in self.values]

    def denominators(self) -> list:
        return [v.denominator for v in self.values]

    def max_denominator(self) -> int:
        return max((v.denominator for v in self.values), default=1)


def farey_points(Q: int, k: int = 2, dyadic: bool = False) -> PointSet:
    """All reduced a/q^k with gcd(a, q) = 1, 1 <= a <= q^k.

    q runs over 1..Q (full range) or Q < q <= 2Q (dyadic block).
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    qs = range(Q + 1, 2 * Q + 1) if dyadic else range(1, Q + 1)
    vals = []
    for q in qs:
        qk = q**k
        for a in range(1, qk + 1):
            if math.gcd(a, q) == 1:
                vals.append(Fraction(a, qk))
    return PointSet(vals)


def eval_S(seq: Sequence, x) -> complex:
    """S(x) = sum_{n=M+1}^{M+N} a_n e(xn), with x reduced mod 1 exactly."""
    xf = as_fraction(x)
    n = seq.support()
    ph = phase_array(xf.numerator % xf.denominator, xf.denominator, n)
    terms = np.asarray(seq.coeffs) * np.exp(2j * np.pi * ph)
    if seq.N > _COMPENSATED_CUTOFF:
        return fsum_complex(terms)
    return complex(terms.sum())


def sieve_sum_points(seq: Sequence, points: PointSet) -> float:
    """sum over the point set of |S(alpha)|^2, by direct evaluation."""
    return math.fsum(abs(eval_S(seq, v)) ** 2 for v in points)


def sieve_sum(seq: Sequence, Q: int, k: int = 2, dyadic: bool = False) -> float:
    """sum_{q} sum_{a: gcd(a,q)=1} |S(a/q^k)|^2 for q <= Q (or the dyadic block)."""
    return sieve_sum_points(seq, farey_points(Q, k, dyadic))


def gram_matrix(points: PointSet, M: int, N: int) -> np.ndarray:
    """T_{rs} = sum_{n=M+1}^{M+N} e((alpha_r - alpha_s) n) by the geometric closed form."""
    if N < 1:
        raise ValueError("N must be >= 1")
    R = len(points)
    dens = points.denominators()
    nums = points.numerators()
    dmax = max(dens, default=1)
    if dmax <= 2**20 and dmax * dmax * max(N, abs(M) + N + 1) < 2**62:
        nr = np.array(nums, dtype=np.int64)
        dr = np.array(dens, dtype=np.int64)
        den = dr[:, None] * dr[None, :]
        num = (nr[:, None] * dr[None, :] - nr[None, :] * dr[:, None]) % den
        fr = num / den
        s = fr - np.round(fr)
        frN = ((num * N) % den) / den
        sN = frN - np.round(frN)
        numc = -2.0 * np.sin(np.pi * sN) ** 2 + 1j * np.sin(2 * np.pi * sN)
        denc = -2.0 * np.sin(np.pi * s) ** 2 + 1j * np.sin(2 * np.pi * s)
        e0 = np.exp(2j * np.pi * (((num * (M + 1)) % den) / den))
        with np.errstate(divide="ignore", invalid="ignore"):
            T = e0 * numc / denc
        T[num == 0] = float(N)
        return T
    # arbitrary-precision fallback for large denominators
    from .exact import geom_char_sum

    vals = points.values
    T = np.empty((R, R), dtype=np.complex128)
    for r in range(R):
        for s_ in range(R):
            T[r, s_] = geom_char_sum(vals[r] - vals[s_], M, N)
    return T


def _power_iteration(matvec, n: int, tol: float, max_iter: int, scale_hint: float = 1.0):
    """Power iteration with the relative Rayleigh stopping rule.

    Runs two fixed starts (all-ones and an irrational rotation) and returns
    the larger Rayleigh limit. A single fixed start can carry a vanishing
    component on the top eigenspace; the Rayleigh sequence then plateaus at a
    lower spectral cluster and the stopping rule fires there. Two independent
    starts make that failure mode require a simultaneous coincidence.

    scale_hint must be a lower bound for the largest eigenvalue (the diagonal
    of a PSD matrix works); iterate norms at or below 1e-9 of it are treated
    as round-off of an annihilated start rather than as convergence.
    """
    starts = [
        np.ones(n, dtype=np.complex128),
        np.exp(2j * np.pi * ((math.sqrt(5) - 1) / 2) * np.arange(n)),
    ]
    floor = 1e-9 * max(scale_hint, 0.0)
    best = None
    total_iters = 0
    for y in starts:
        y = y / np.linalg.norm(y)
        rho_prev = None
        rho = math.nan
        last_inc = math.inf
        for it in range(1, max_iter + 1):
            u = matvec(y)
            rho = float(np.real(np.vdot(y, u)))
            nu = float(np.linalg.norm(u))
            if nu <= floor:
                break  # start vector is (numerically) annihilated
            if rho_prev is not None:
                last_inc = abs(rho - rho_prev)
                if last_inc <= tol * max(abs(rho), 1.0):
                    total_iters += it
                    if best is None or rho > best:
                        best = rho
                    break
            y = u / nu
            rho_prev = rho
        else:
            raise PowerIterationError(max_iter, (rho - last_inc, rho))
    if best is None:
        return 0.0, 0  # operator annihilated both starts
    return best, total_iters


def _toeplitz_matvec_factory(points: PointSet, N: int):
    w = backend.phase_moments(points.numerators(), points.denominators(), N)
    L = 1 << max(1, int(math.ceil(math.log2(max(2 * N - 1, 2)))))
    c = np.zeros(L, dtype=np.complex128)
    c[:N] = w
    if N > 1:
        c[L - N + 1 :] = np.conj(w[1:][::-1])
    fc = np.fft.fft(c)

    def matvec(y):
        yy = np.zeros(L, dtype=np.complex128)
        yy[:N] = y
        return np.fft.ifft(np.fft.fft(yy) * fc)[:N]

    return matvec


def extremal_constant(
    points: PointSet,
    M: int,
    N: int,
    method: str = "auto",
    tol: float = 1e-10,
    max_iter: int = 50_000,
    details: bool = False,
):
    """lambda_max of the Gram matrix T_{rs} = sum_n e((alpha_r - alpha_s) n).

    method "gram" power-iterates T itself; "toeplitz" power-iterates the
    spectrum-equivalent N x N dual (see module docstring); "auto" picks gram
    for small point sets and the dual otherwise.
    """
    R = len(points)
    if R == 0:
        raise ValueError("point set is empty")
    if method == "auto":
        method = "gram" if R <= _GRAM_AUTO_CAP else "toeplitz"
    if method == "gram":
        T = gram_matrix(points, M, N)
        value, iters = _power_iteration(lambda y: T @ y, R, tol, max_iter, scale_hint=N)
    elif method == "toeplitz":
        matvec = _toeplitz_matvec_factory(points, N)
        value, iters = _power_iteration(matvec, N, tol, max_iter, scale_hint=R)
    else:
        raise ValueError(f"unknown method {method!r}")
    if details:
        return value, {"method": method, "iterations": iters}
    return value
