"""Published majorants, their combinations, and ratio experiments.

The catalogue holds every (Q, N)-majorant for the dyadic square-moduli sieve
sum (classical baselines, the log-weighted and epsilon-weighted mixed bounds,
the piecewise exponent bound, the conjectured shape, and the min-combined
form), all without the common factor Z.

The window-count majorants come in two shapes, taking (Q, Delta, r): the
first with the Q/sqrt(r) group, the second with the sqrt(r) + Q^2 Delta r
group. p_alpha_combined dispatches second for r <= Q and first for r > Q and
also returns the closed four-term combination; term-by-term algebra gives
dispatch <= 2 * combined (each dispatch term is dominated by a combined term,
with at most two dispatch terms sharing one target), and that guard is
enforced at runtime.

ratio_experiment measures the extremal constant of the dyadic square-moduli
point set against the whole catalogue; p_alpha_experiment measures exact
window counts over entire approximation grids against the window majorants.
Both refuse work beyond their cost budget instead of thrashing.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import as_fraction
from .farey import CountWindow, beta_grid, count_P
from .seqsum import extremal_constant, farey_points

C_TEST = 10.0
Q_CAP = 32
N_CAP = 8192

_CATALOGUE = (
    "q2_plus_n",
    "q3_plus_qn",
    "q4_plus_n",
    "log_mixed",
    "q3_n_rootnq2",
    "piecewise_q35",
    "conj_q3_n",
    "min_mix",
)


def catalogue_names() -> tuple[str, ...]:
    return _CATALOGUE


def majorant(name: str, Q: int, N: int, eps: float = 0.05) -> float:
    """The named (Q, N)-majorant without the Z factor."""
    if Q < 1 or N < 1:
        raise ValueError("Q and N must be positive")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if name == "q2_plus_n":
        return float(Q**2 + N)
    if name == "q3_plus_qn":
        return float(Q**3 + Q * N)
    if name == "q4_plus_n":
        return float(Q**4 + N)
    if name == "log_mixed":
        return math.log(2.0 * Q) * (Q**3 + (N * math.sqrt(Q) + math.sqrt(N) * Q**2) * N**eps)
    if name == "q3_n_rootnq2":
        return (Q * N) ** eps * (Q**3 + N + math.sqrt(N) * Q**2)
    if name == "piecewise_q35":
        # exponent comparison Q <= N^(5/12) done on integers
        if Q**12 <= N**5:
            return Q ** (0.6 + eps) * N
        return float(Q) ** (3.0 + eps)
    if name == "conj_q3_n":
        return Q**eps * (Q**3 + N)
    if name == "min_mix":
        return (Q * N) ** eps * (
            Q**3 + N + min(N * math.sqrt(Q), math.sqrt(N) * Q**2)
        )
    raise ValueError(f"unknown majorant {name!r}")


def _window_args(Q: int, Delta, r: int, eps: float):
    Delta = as_fraction(Delta)
    if Q < 1 or r < 1:
        raise ValueError("Q and r must be positive")
    if not 0 < Delta <= Fraction(1, 2):
        raise ValueError("Delta must lie in (0, 1/2]")
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return Delta


def p_alpha_majorant_first(Q: int, Delta, r: int, eps: float = 0.05) -> float:
    """Q^3 Delta + slack * (Q/sqrt(r) + sqrt(Q) + Q sqrt(r Delta) + Q^(3/2) sqrt(Delta))."""
    Delta = _window_args(Q, Delta, r, eps)
    d = float(Delta)
    slack = (Q / d) ** eps
    return Q**3 * d + slack * (
        Q / math.sqrt(r) + math.sqrt(Q) + Q * math.sqrt(r * d) + Q**1.5 * math.sqrt(d)
    )


def p_alpha_majorant_second(Q: int, Delta, r: int, eps: float = 0.05) -> float:
    """slack * (sqrt(Q) + Q Delta^(1/4) + Q^3 Delta + sqrt(r) + Q^(3/2) sqrt(Delta) r^(1/4) + Q^2 Delta r)."""
    Delta = _window_args(Q, Delta, r, eps)
    d = float(Delta)
    slack = (Q / d) ** eps
    return slack * (
        math.sqrt(Q)
        + Q * d**0.25
        + Q**3 * d
        + math.sqrt(r)
        + Q**1.5 * math.sqrt(d) * r**0.25
        + Q**2 * d * r
    )


def p_alpha_combined(Q: int, Delta, r: int, eps: float = 0.05) -> tuple[float, float]:
    """(dispatched value, closed four-term combination).

    Dispatch uses the second majorant for r <= Q and the first for r > Q;
    the combination is slack * (Q^3 Delta + Q^(7/4) sqrt(Delta) + Q Delta^(1/4)
    + sqrt(Q)) and dominates the dispatch up to the factor 2 noted in the
    module docstring.
    """
    Delta = _window_args(Q, Delta, r, eps)
    if r * r * Delta > 1:
        raise ValueError("need r <= Delta^(-1/2)")
    if r <= Q:
        dispatch = p_alpha_majorant_second(Q, Delta, r, eps)
    else:
        dispatch = p_alpha_majorant_first(Q, Delta, r, eps)
    d = float(Delta)
    slack = (Q / d) ** eps
    combined = slack * (Q**3 * d + Q**1.75 * math.sqrt(d) + Q * d**0.25 + math.sqrt(Q))
    if dispatch > 2.0 * combined * (1.0 + 1e-12):
        raise RuntimeError(
            f"dispatch {dispatch} exceeded twice the combined form {combined}"
        )
    return dispatch, combined


def smallz_majorant(Q: int, Delta, r: int, eps: float = 0.05) -> float:
    """Delta^(-eps) (1 + Q0 Delta r + Q0^(3/2) Delta), the near-rational branch."""
    Delta = _window_args(Q, Delta, r, eps)
    d = float(Delta)
    Q0 = float(Q) ** 2
    return d**-eps * (1.0 + Q0 * d * r + Q0**1.5 * d)


def simple_case_terms(
    Q: int, Delta, r: int, z, delta: Optional[float] = None, eps: float = 0.05
) -> dict[str, float]:
    """The three simple-quadrant contributions and their stated total."""
    Delta = _window_args(Q, Delta, r, eps)
    z = as_fraction(z)
    if z <= 0:
        raise ValueError("z must be positive")
    Q0 = float(Q) ** 2
    zf = float(z)
    if delta is None:
        delta = Q0 * float(Delta) / zf
    if not Q0 * float(Delta) / zf * (1 - 1e-12) <= delta <= Q0 * (1 + 1e-12):
        raise ValueError("delta must lie in [Q0 Delta / z, Q0]")
    slack = (Q0 / float(Delta)) ** eps
    return {
        "j0_l0": delta * zf * math.sqrt(Q0),
        "jnz_l0": delta / math.sqrt(Q0) * slack / math.sqrt(r),
        "opposite_sign": slack * (delta * zf + math.sqrt(r)),
        "total": slack * (math.sqrt(r) + delta * zf * math.sqrt(Q0) + delta / math.sqrt(Q0 * r)),
    }


def critical_case_bound(Q: int, Delta, r: int, eps: float = 0.05) -> float:
    """slack * (Q0^(1/4) + sqrt(Q0) Delta^(1/4) + sqrt(r)) with Q0 = Q^2."""
    Delta = _window_args(Q, Delta, r, eps)
    Q0 = float(Q) ** 2
    d = float(Delta)
    return (Q0 / d) ** eps * (Q0**0.25 + math.sqrt(Q0) * d**0.25 + math.sqrt(r))


@dataclass(frozen=True)
class BoundReport:
    """Measured extremal constant against the whole catalogue for one (Q, N)."""

    Q: int
    N: int
    measured: float
    majorants: dict[str, float]
    ratios: dict[str, float]
    eps_used: float

    def __post_init__(self):
        if self.Q < 1 or self.N < 1:
            raise ValueError("Q and N must be positive")
        for name, val in self.majorants.items():
            if not val > 0:
                raise ValueError(f"majorant {name} must be positive")
        for name, val in self.ratios.items():
            if not math.isfinite(val):
                raise ValueError(f"ratio {name} must be finite")


class ExperimentBudgetError(RuntimeError):
    """Experiment refused: estimated cost exceeds the budget."""

    def __init__(self, estimated_cost: float, budget: float):
        self.estimated_cost = estimated_cost
        self.budget = budget
        super().__init__(
            f"estimated cost {estimated_cost:.3g} exceeds budget {budget:.3g}"
        )


def _totient(q: int) -> int:
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def dyadic_pair_count(Q: int) -> int:
    """Number of reduced a/q^2 with Q < q <= 2Q: sum of q phi(q)."""
    return sum(q * _totient(q) for q in range(Q + 1, 2 * Q + 1))


def ratio_experiment(
    Q_list,
    N_list,
    eps: float = 0.05,
    seed: int = 0,
    max_cost: float = 5.0e8,
    threads: int = 1,
) -> list[BoundReport]:
    """Extremal constants of dyadic square-moduli point sets vs the catalogue.

    The sweep itself is deterministic; seed is accepted so callers can record
    it alongside the run. Total estimated cost (sum of R*N per cell) above
    max_cost is refused up front.
    """
    cells = [(int(Q), int(N)) for Q in Q_list for N in N_list]
    for Q, N in cells:
        if not 1 <= Q <= Q_CAP:
            raise ValueError(f"Q = {Q} outside 1..{Q_CAP}")
        if not 1 <= N <= N_CAP:
            raise ValueError(f"N = {N} outside 1..{N_CAP}")
    cost = math.fsum(dyadic_pair_count(Q) * N for Q, N in cells)
    if cost > max_cost:
        raise ExperimentBudgetError(cost, max_cost)

    def run_cell(cell):
        Q, N = cell
        points = farey_points(Q, dyadic=True)
        lam = extremal_constant(points, 0, N)
        majorants = {name: majorant(name, Q, N, eps) for name in _CATALOGUE}
        ratios = {name: lam / value for name, value in majorants.items()}
        return BoundReport(
            Q=Q, N=N, measured=lam, majorants=majorants, ratios=ratios, eps_used=eps
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_cell, cells))
    return [run_cell(cell) for cell in cells]


@dataclass(frozen=True)
class PAlphaReport:
    """Worst window-count ratios over one whole approximation grid."""

    Q: int
    Delta: Fraction
    n_beta: int
    max_count: int
    max_ratio_first: float
    max_ratio_second: float
    max_ratio_dispatch: float
    max_ratio_combined: float
    worst_beta: Fraction
    n_smallz: int
    max_ratio_smallz: float
    eps_used: float


def p_alpha_experiment(Q_list, Delta_list, eps: float = 0.05) -> list[PAlphaReport]:
    """Exact window counts against both majorants over entire grids.

    The near-rational branch ratio is tracked separately for grid points
    with Delta/2 <= |z| <= Delta.
    """
    reports = []
    for Delta in Delta_list:
        Delta = as_fraction(Delta)
        grid = beta_grid(Delta)
        for Q in Q_list:
            Q = int(Q)
            best = None
            max_count = 0
            r_first = r_second = r_dispatch = r_combined = 0.0
            n_smallz = 0
            r_smallz = 0.0
            for form in grid:
                cnt = count_P(CountWindow(Q=Q, Delta=Delta, alpha=form.value))
                max_count = max(max_count, cnt)
                first = p_alpha_majorant_first(Q, Delta, form.r, eps)
                second = p_alpha_majorant_second(Q, Delta, form.r, eps)
                dispatch, combined = p_alpha_combined(Q, Delta, form.r, eps)
                r_first = max(r_first, cnt / first)
                r_second = max(r_second, cnt / second)
                r_combined = max(r_combined, cnt / combined)
                if cnt / dispatch >= r_dispatch:
                    r_dispatch = cnt / dispatch
                    best = form.value
                if 2 * abs(form.z) >= Delta and abs(form.z) <= Delta:
                    n_smallz += 1
                    r_smallz = max(
                        r_smallz, cnt / smallz_majorant(Q, Delta, form.r, eps)
                    )
            reports.append(
                PAlphaReport(
                    Q=Q,
                    Delta=Delta,
                    n_beta=len(grid),
                    max_count=max_count,
                    max_ratio_first=r_first,
                    max_ratio_second=r_second,
                    max_ratio_dispatch=r_dispatch,
                    max_ratio_combined=r_combined,
                    worst_beta=best if best is not None else Fraction(0),
                    n_smallz=n_smallz,
                    max_ratio_smallz=r_smallz,
                    eps_used=eps,
                )
            )
    return reports
