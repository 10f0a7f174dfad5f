"""Oscillatory integrals with Gaussian weight, and the critical-case term evaluators.

The central integral is

    E(A, B, Nw) = int_0^inf e^(-y/Nw) e(A y - B sqrt(y)) dy
                = 2 int_0^inf x e^(-x^2/Nw) e(A x^2 - B x) dx   (x = sqrt(y))

evaluated by three independent routes:

* eval_E_quadrature: ground truth. The integrand 2 z exp(gamma z^2 + beta z)
  with gamma = -1/Nw + 2 pi i A, beta = -2 pi i B is entire, so the real path
  is deformed at the stationary point x0 = B/(2A) onto the diagonal ray where
  exp(2 pi i A z^2) decays like a Gaussian; panels are sized to a quarter
  period of the local phase and integrated with Gauss-Legendre 16 against an
  embedded 8-point estimate. On the real axis the number of quarter periods
  grows like A x^2 + B x, which is why large A Nw needs the deformation.
* eval_E_fixed_grid: the same panel rule kept on the real axis. Independent
  of the contour argument, but refuses (QuadratureBudgetError) when the
  oscillation budget is out of reach.
* eval_E_closed_form: integration by parts gives
  2 gamma I + beta J = -1 with J = (sqrt(pi)/(2 s)) erfcx(-beta/(2 s)),
  s = sqrt(-gamma), so E = 2I = -1/gamma - (beta/gamma) J. The erfcx form
  keeps the exponent cancellation exact, so it never overflows here.

eval_E_asymptotic returns the stationary-phase main term together with its
error budget 1/|A| + 1/(sqrt(|A|) |B|) for the same-sign regime, and
bound_E_opposite_sign returns sqrt(Nw)/|B| for the opposite-sign regime.

first_derivative_bound_check and stationary_phase_check test the two
underlying one-dimensional estimates (a first-derivative bound and a weighted
stationary phase expansion) on concrete instances; their unnamed absolute
constants enter through a calibration factor recorded with each check.

TransformTerm carries the arithmetic data (r*, j*, k*, parity, cutoff) of one
term of the transformed critical-case sum, and transform_term_eval produces
the complex term weight * Gauss sum * exact phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.special import erfcx

from .exact import as_fraction, e_frac, frac1
from .gauss import GaussSumSpec, gauss_direct
from .kernels import phi_hat

_GL16_X, _GL16_W = np.polynomial.legendre.leggauss(16)
_GL8_X, _GL8_W = np.polynomial.legendre.leggauss(8)


class QuadratureBudgetError(RuntimeError):
    """Panel budget exhausted; carries the error estimate reached so far."""

    def __init__(self, panels: int, achieved: float):
        self.panels = panels
        self.achieved = achieved
        super().__init__(
            f"quadrature stopped after {panels} panels, error estimate {achieved:.3e}"
        )


@dataclass(frozen=True)
class OscIntegralSpec:
    """Parameters of E: linear phase A, square-root phase B, weight scale Nw."""

    A: float
    B: float
    Nw: float

    def __post_init__(self):
        if not self.Nw >= 1:
            raise ValueError("weight scale Nw must be >= 1")


def _integrand(gamma: complex, beta: complex):
    def fn(z):
        return 2.0 * z * np.exp(gamma * z * z + beta * z)

    return fn


def _rate(gamma: complex, beta: complex):
    # cycles per unit arclength: |phase derivative| / 2 pi, decay included
    def rate(z: complex) -> float:
        return abs(2.0 * gamma * z + beta) / (2.0 * math.pi)

    return rate


def _march_segment(fn, rate, p0: complex, p1: complex, max_panels: int):
    """GL16 panels along the straight segment p0 -> p1, quarter-period sized."""
    length = abs(p1 - p0)
    if length == 0.0:
        return 0.0 + 0.0j, 0.0, 0
    direction = (p1 - p0) / length
    value = 0.0 + 0.0j
    est = 0.0
    panels = 0
    t = 0.0
    while t < length:
        width = min(length - t, length / 6.0, 0.25 / max(rate(p0 + direction * t), 1e-9))
        far = p0 + direction * min(t + width, length)
        width = min(width, 0.25 / max(rate(far), 1e-9))
        width = max(width, length * 1e-12)
        z0 = p0 + direction * t
        z1 = p0 + direction * min(t + width, length)
        mid = (z0 + z1) / 2.0
        half = (z1 - z0) / 2.0
        v16 = half * np.dot(_GL16_W, fn(mid + half * _GL16_X))
        v8 = half * np.dot(_GL8_W, fn(mid + half * _GL8_X))
        value += v16
        est += abs(v16 - v8)
        panels += 1
        if panels > max_panels:
            raise QuadratureBudgetError(panels, est)
        t += width
    return value, est, panels


_UP = cmath.exp(1j * math.pi / 4)
_DOWN = cmath.exp(-1j * math.pi / 4)


def _contour_pieces(A: float, B: float, Nw: float, tol: float):
    """Straight pieces whose union carries E, plus an analytic tail bound."""
    logs = math.log(1.0 / tol) + math.log(1.0 + Nw) + 10.0
    if A == 0.0:
        # weight exp(gamma z^2) is unimodular on the down diagonal; all decay
        # comes from e(-B z), B > 0 here
        T = logs / (math.sqrt(2.0) * math.pi * B) + 3.0
        tail = (T + 1.0) * 2.0 * math.exp(-math.sqrt(2.0) * math.pi * B * T)
        return [(0.0 + 0.0j, _DOWN * T)], tail
    T = math.sqrt(logs / (2.0 * math.pi * A)) + 2.0
    if B <= 0.0:
        tail = (T + 1.0) ** 2 * math.exp(-2.0 * math.pi * A * T * T)
        return [(0.0 + 0.0j, _UP * T)], tail
    x0 = B / (2.0 * A)
    x_weight = math.sqrt(Nw * logs)
    if x0 >= x_weight:
        # the weight already kills the integrand before the stationary point:
        # truncate on the real axis, tail bounded by int 2x e^(-x^2/Nw) dx
        tail = Nw * math.exp(-x_weight * x_weight / Nw)
        return [(0.0 + 0.0j, complex(x_weight))], tail
    tail = (x0 + T + 1.0) ** 2 * math.exp(-2.0 * math.pi * A * T * T)
    return [(0.0 + 0.0j, complex(x0)), (complex(x0), complex(x0) + _UP * T)], tail


def eval_E_quadrature(
    spec: OscIntegralSpec,
    tol: float = 1e-9,
    max_panels: int = 200_000,
    details: bool = False,
):
    """E by contour-deformed adaptive panel quadrature (the ground truth)."""
    A, B, Nw = float(spec.A), float(spec.B), float(spec.Nw)
    if A < 0.0 or (A == 0.0 and B < 0.0):
        flipped = eval_E_quadrature(
            OscIntegralSpec(-A, -B, Nw), tol=tol, max_panels=max_panels, details=details
        )
        if details:
            value, info = flipped
            return value.conjugate(), info
        return flipped.conjugate()
    if A == 0.0 and B == 0.0:
        return (Nw + 0.0j, {"est_error": 0.0, "panels": 0}) if details else Nw + 0.0j

    gamma = complex(-1.0 / Nw, 2.0 * math.pi * A)
    beta = complex(0.0, -2.0 * math.pi * B)
    fn = _integrand(gamma, beta)
    rate = _rate(gamma, beta)
    pieces, tail = _contour_pieces(A, B, Nw, tol)
    value = 0.0 + 0.0j
    est = tail
    used = 0
    for p0, p1 in pieces:
        v, e, n = _march_segment(fn, rate, p0, p1, max_panels - used)
        value += v
        est += e
        used += n
    if details:
        return value, {"est_error": est, "panels": used}
    return value


def eval_E_fixed_grid(
    spec: OscIntegralSpec, tol: float = 1e-7, max_panels: int = 400_000
) -> complex:
    """E by the same panel rule kept on the real axis; refuses hopeless budgets."""
    A, B, Nw = float(spec.A), float(spec.B), float(spec.Nw)
    gamma = complex(-1.0 / Nw, 2.0 * math.pi * A)
    beta = complex(0.0, -2.0 * math.pi * B)
    logs = math.log(1.0 / tol) + math.log(1.0 + Nw) + 10.0
    cutoff = math.sqrt(Nw * logs)
    value, est, _ = _march_segment(
        _integrand(gamma, beta), _rate(gamma, beta), 0.0 + 0.0j, complex(cutoff), max_panels
    )
    return value


def eval_E_closed_form(spec: OscIntegralSpec) -> complex:
    """E by the erfcx closed form; independent of any quadrature."""
    A, B, Nw = float(spec.A), float(spec.B), float(spec.Nw)
    gamma = complex(-1.0 / Nw, 2.0 * math.pi * A)
    beta = complex(0.0, -2.0 * math.pi * B)
    if B == 0.0:
        return -1.0 / gamma
    s = np.sqrt(-gamma)  # principal branch; real part positive
    J = (math.sqrt(math.pi) / (2.0 * s)) * erfcx(-beta / (2.0 * s))
    return complex(-1.0 / gamma - (beta / gamma) * J)


def eval_E_asymptotic(spec: OscIntegralSpec) -> tuple[complex, float]:
    """Stationary-phase main term and error budget for the same-sign regime."""
    A, B, Nw = float(spec.A), float(spec.B), float(spec.Nw)
    if B == 0.0 or A * B <= 0.0:
        raise ValueError("main term requires A and B of the same (nonzero) sign")
    if A < 0.0:
        main, budget = eval_E_asymptotic(OscIntegralSpec(-A, -B, Nw))
        return main.conjugate(), budget
    main = (
        cmath.exp(2j * math.pi / 8)
        * (2.0 * B / (2.0 * A) ** 1.5)
        * math.exp(-B * B / (4.0 * A * A * Nw))
        * cmath.exp(-2j * math.pi * B * B / (4.0 * A))
    )
    budget = 1.0 / abs(A) + 1.0 / (math.sqrt(abs(A)) * abs(B))
    return main, budget


def bound_E_opposite_sign(spec: OscIntegralSpec) -> float:
    """sqrt(Nw)/|B|, the modulus bound for the opposite-sign regime."""
    A, B, Nw = float(spec.A), float(spec.B), float(spec.Nw)
    if B == 0.0:
        raise ValueError("bound requires B != 0")
    if A * B > 0.0:
        raise ValueError("bound covers A/B <= 0 only")
    return math.sqrt(Nw) / abs(B)


def _oscillatory_real(g, f, fprime, a: float, b: float, max_panels: int = 200_000):
    """int_a^b g(x) e(f(x)) dx with quarter-period panels from |f'|.

    g and f are scalar callables; evaluation is pointwise, which is fine at
    the desk scale of the estimate checks.
    """

    def fn(z):
        xs = np.real(np.atleast_1d(z))
        return np.array(
            [g(float(x)) * cmath.exp(2j * math.pi * f(float(x))) for x in xs]
        )

    def rate(z):
        return abs(float(fprime(float(np.real(z))))) + 1e-12

    value, est, _ = _march_segment(fn, rate, complex(a), complex(b), max_panels)
    return value, est


def first_derivative_bound_check(
    f: Callable,
    g: Callable,
    a: float,
    b: float,
    lam: float,
    fprime: Optional[Callable] = None,
    c_test: float = 10.0,
    samples: int = 1024,
) -> bool:
    """|int_a^b g e(f)| <= c_test / lam, preconditions sampled then enforced.

    Requires |f'(x)/g(x)| >= lam and g/f' monotonic on [a, b]; violations
    found on the sample grid are rejected rather than silently tested.
    """
    if lam <= 0:
        raise ValueError("lam must be positive")
    xs = np.linspace(a, b, samples)
    if fprime is None:
        h = (b - a) / (8.0 * samples)
        fp = np.array([(f(x + h) - f(x - h)) / (2.0 * h) for x in xs])
        fprime_fn = lambda x: (f(x + h) - f(x - h)) / (2.0 * h)
    else:
        fp = np.array([fprime(x) for x in xs])
        fprime_fn = fprime
    gs = np.array([g(x) for x in xs])
    if np.any(np.abs(fp) < lam * np.abs(gs) * (1.0 - 1e-9)):
        raise ValueError("|f'/g| >= lam fails on the sample grid")
    ratio = gs / fp
    diffs = np.diff(ratio)
    if np.any(diffs > 1e-12) and np.any(diffs < -1e-12):
        raise ValueError("g/f' is not monotonic on the sample grid")
    value, _ = _oscillatory_real(g, f, fprime_fn, a, b)
    return abs(value) <= c_test / lam


@dataclass(frozen=True)
class PhaseProblem:
    """A weighted stationary-phase instance on [a, b].

    f must have positive second derivative; mu, F, G are the control
    functions of the expansion (amplitude bound G, phase size F, analyticity
    radius mu). Callables must accept scalars; muprime defaults to a central
    difference. c_scale calibrates the unnamed absolute constant inside the
    smooth error term.
    """

    f: Callable
    fprime: Callable
    fsecond: Callable
    g: Callable
    a: float
    b: float
    k: float
    mu: Callable
    F: Callable
    G: Callable
    muprime: Optional[Callable] = None
    c_scale: float = 1.0

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("need a < b")
        for x in np.linspace(self.a, self.b, 64):
            if self.fsecond(float(x)) <= 0.0:
                raise ValueError("f'' must be positive on [a, b]")

    def stationary_point(self) -> Optional[float]:
        """Unique zero of f' + k in [a, b] if the sign changes (f' increases)."""
        lo, hi = self.a, self.b
        flo = self.fprime(lo) + self.k
        fhi = self.fprime(hi) + self.k
        if flo > 0.0 or fhi < 0.0:
            return None
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.fprime(mid) + self.k <= 0.0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


@dataclass(frozen=True)
class StationaryPhaseReport:
    integral: complex
    main_term: complex
    residual: float
    budget_smooth: float
    budget_stationary: float
    budget_endpoints: float

    @property
    def total_budget(self) -> float:
        return self.budget_smooth + self.budget_stationary + self.budget_endpoints

    def within(self, c_test: float = 10.0) -> bool:
        return self.residual <= c_test * self.total_budget


def _plain_integral(fn, a: float, b: float, panels: int = 256) -> float:
    edges = np.linspace(a, b, panels + 1)
    total = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        xs = mid + half * _GL16_X
        total.append(half * np.dot(_GL16_W, [fn(float(x)) for x in xs]))
    return float(math.fsum(total))


def stationary_phase_check(p: PhaseProblem) -> StationaryPhaseReport:
    """Quadrature minus main term, against the three concrete error budgets.

    With no stationary point in [a, b] the main term is omitted and only the
    endpoint and smooth budgets apply.
    """
    value, _ = _oscillatory_real(
        p.g,
        lambda x: p.f(x) + p.k * x,
        lambda x: p.fprime(x) + p.k,
        p.a,
        p.b,
    )
    x0 = p.stationary_point()
    if x0 is None:
        main = 0.0 + 0.0j
        budget_stat = 0.0
    else:
        main = (p.g(x0) / math.sqrt(p.fsecond(x0))) * cmath.exp(
            2j * math.pi * (p.f(x0) + p.k * x0 + 0.125)
        )
        budget_stat = p.G(x0) * p.mu(x0) * p.F(x0) ** -1.5

    if p.muprime is None:
        h = (p.b - p.a) * 1e-6
        muprime = lambda x: (p.mu(min(x + h, p.b)) - p.mu(max(x - h, p.a))) / (
            min(x + h, p.b) - max(x - h, p.a)
        )
    else:
        muprime = p.muprime
    absk = abs(p.k)
    smooth_fn = lambda x: p.G(x) * math.exp(
        -p.c_scale * (absk * p.mu(x) + p.F(x))
    ) * (1.0 + abs(muprime(x)))
    budget_smooth = _plain_integral(smooth_fn, p.a, p.b)

    end = 0.0
    for x in (p.a, p.b):
        end += p.G(x) / (abs(p.fprime(x) + p.k) + math.sqrt(p.fsecond(x)))

    return StationaryPhaseReport(
        integral=value,
        main_term=main,
        residual=abs(value - main),
        budget_smooth=budget_smooth,
        budget_stationary=budget_stat,
        budget_endpoints=end,
    )


@dataclass(frozen=True)
class TransformTerm:
    """One term of the transformed critical-case sum.

    Carries the arithmetic data (j, l) and the Dirichlet data (b, r, z) with
    the window scales Q0 and Delta. delta defaults to Q0 * Delta / z, the
    choice made when the weight parameter is finally fixed; it must stay in
    [Q0 Delta / z, Q0]. eps and c_scale are the smoothing exponent and the
    unnamed kernel-width constant.
    """

    j: int
    l: int
    b: int
    r: int
    z: Fraction
    Q0: float
    Delta: Fraction
    delta: Optional[float] = None
    eps: float = 0.05
    c_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "z", as_fraction(self.z))
        object.__setattr__(self, "Delta", as_fraction(self.Delta))
        if self.r < 1:
            raise ValueError("r must be positive")
        if math.gcd(self.b, self.r) != 1:
            raise ValueError("b/r must be reduced")
        if self.z <= 0:
            raise ValueError("z must be positive (mirror negative z first)")
        if not 0 < self.Delta <= Fraction(1, 2):
            raise ValueError("Delta must lie in (0, 1/2]")
        if self.Q0 < 1:
            raise ValueError("Q0 must be >= 1")
        if self.j < 0 or self.l < 0:
            raise ValueError("indices must be nonnegative")
        if self.delta is None:
            object.__setattr__(self, "delta", float(self.Q0 * self.Delta / self.z))
        lo = float(self.Q0 * self.Delta / self.z)
        if not lo * (1 - 1e-12) <= self.delta <= self.Q0 * (1 + 1e-12):
            raise ValueError("delta must lie in [Q0 Delta / z, Q0]")

    @property
    def gcd_jr(self) -> int:
        return math.gcd(self.j, self.r)  # equals r when j = 0

    @property
    def rstar(self) -> int:
        return self.r // self.gcd_jr

    @property
    def jstar(self) -> int:
        return self.j // self.gcd_jr

    @property
    def chi(self) -> int:
        return self.l % 2

    @property
    def kstar(self) -> Fraction:
        return 1 / (self.z * self.rstar * self.r)

    @property
    def D(self) -> float:
        """Cutoff min(sqrt(Q0) j z r* smooth, r* sqrt(Q0) / (2 c delta))."""
        smooth = float(self.Q0 / self.Delta) ** self.eps
        first = math.sqrt(self.Q0) * self.j * float(self.z) * self.rstar * smooth
        second = self.rstar * math.sqrt(self.Q0) / (2.0 * self.c_scale * self.delta)
        return min(first, second)

    def g_weight(self) -> float:
        """The real weight multiplying the Gauss sum in the transformed term."""
        if self.j <= 0 or self.l <= 0:
            raise ValueError("weight is defined on the quadrant j > 0, l > 0")
        jz = self.j * float(self.z)
        outer = phi_hat(8.0 * self.j * self.delta * float(self.z)) / self.rstar
        inner = phi_hat(
            self.c_scale * self.l * self.delta / (self.rstar * math.sqrt(self.Q0))
        )
        amp = self.l / (jz**1.5 * self.rstar)
        damp = math.exp(-self.l**2 / (4.0 * jz * jz * self.Q0 * self.rstar**2))
        return outer * inner * amp * damp

    def phi_factor(self) -> float:
        """Partial-summation weight (1 - 2 c l delta / (r* sqrt(Q0))) l exp(...)."""
        if self.j <= 0:
            raise ValueError("defined for j > 0")
        jzr = self.j * float(self.z) * self.rstar
        lin = 1.0 - 2.0 * self.c_scale * self.l * self.delta / (
            self.rstar * math.sqrt(self.Q0)
        )
        return lin * self.l * math.exp(-self.l**2 / (self.Q0 * jzr * jzr))


def transform_term_eval(t: TransformTerm) -> complex:
    """weight * G(j* b, chi(l); r*) * e(exact phase), for j > 0, l > 0.

    The phase splits into abar (l^2 - chi)/4 over r* (an integer numerator,
    abar the inverse of j* b mod r*) plus l^2/(4 j z r*^2); both parts are
    reduced mod 1 in exact rationals before the exponential.
    """
    if t.j <= 0 or t.l <= 0:
        raise ValueError("evaluator covers the critical quadrant j > 0, l > 0")
    weight = t.g_weight()
    gsum = gauss_direct(GaussSumSpec(t.jstar * t.b, t.chi, t.rstar))
    abar = pow((t.jstar * t.b) % t.rstar, -1, t.rstar)
    quarter = (t.l * t.l - t.chi) // 4
    ph = frac1(
        Fraction(abar * quarter, t.rstar)
        + Fraction(t.l * t.l, 4 * t.j) / (t.z * t.rstar * t.rstar)
    )
    return weight * gsum * e_frac(ph)
