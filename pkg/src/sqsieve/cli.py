"""Command-line harness: one subcommand per module family.

Every run writes exactly one CSV result table ({command}.csv) and one JSON
manifest ({command}.manifest.json) into --out-dir. Output bytes depend only
on flags and seed: floats are printed with a fixed 17-significant-digit
format, rationals as "p/q", complex values as adjacent re/im columns, and
all row orders are fixed. The manifest records the command, its parameters,
seed, eps, conformance factor, tool version, wall time and a sha256 digest
of the result file; wall time is the only field that varies between
identical runs.

Exit codes: 0 when every row passes its conformance check, 2 when any row
fails, 1 on usage errors (unknown subcommand or bad flags).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .backend import gauss_row
from .bounds import catalogue_names, p_alpha_experiment, ratio_experiment
from .exact import as_fraction
from .farey import (
    CountWindow,
    beta_grid,
    count_P,
    count_P_wrapped,
    covering_distance,
    window_count_sup,
)
from .kernels import poisson_identity_residual
from .oscint import (
    OscIntegralSpec,
    bound_E_opposite_sign,
    eval_E_asymptotic,
    eval_E_closed_form,
    eval_E_quadrature,
)
from .weylcongr import CongruenceInstance, WeylInstance, congruence_bound_check, weyl_shift_check


def fmt_float(x) -> str:
    return f"{float(x):.17g}"


def fmt_rat(x: Fraction) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fmt_ok(ok: bool) -> str:
    return "1" if ok else "0"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, leaving 2 free for conformance failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    return max(1, int(os.environ.get("QS_THREADS", "1")))


def _seeded_rationals(rng: random.Random, count: int, den_max: int) -> list[Fraction]:
    out = []
    for _ in range(count):
        den = rng.randint(2, den_max)
        out.append(Fraction(rng.randint(0, den - 1), den))
    return out


def _cmd_sieve_ratio(args):
    names = catalogue_names()
    reports = ratio_experiment(
        args.Q, args.N, eps=args.eps, seed=args.seed, threads=_threads(args)
    )
    header = ["Q", "N", "measured"]
    for name in names:
        header += [f"{name}_majorant", f"{name}_ratio"]
    header.append("ok")
    rows, n_fail = [], 0
    for rep in reports:
        ok = (
            rep.ratios["min_mix"] <= args.ctest
            and rep.ratios["q3_n_rootnq2"] <= args.ctest
        )
        n_fail += not ok
        row = [str(rep.Q), str(rep.N), fmt_float(rep.measured)]
        for name in names:
            row += [fmt_float(rep.majorants[name]), fmt_float(rep.ratios[name])]
        row.append(fmt_ok(ok))
        rows.append(row)
    params = {"Q": args.Q, "N": args.N, "threads": _threads(args)}
    return header, rows, n_fail, params


def _cmd_farey_count(args):
    rng = random.Random(args.seed)
    alphas = list(args.alpha) if args.alpha else []
    alphas += _seeded_rationals(rng, args.n_random, 10**6)
    sup = window_count_sup(args.delta, args.Q)
    header = ["alpha", "count", "count_wrapped", "sup_bound", "ok"]
    rows, n_fail = [], 0
    for alpha in alphas:
        w = CountWindow(Q=args.Q, Delta=args.delta, alpha=alpha)
        plain = count_P(w)
        wrapped = count_P_wrapped(w)
        ok = plain <= wrapped <= sup
        n_fail += not ok
        rows.append([fmt_rat(alpha), str(plain), str(wrapped), str(sup), fmt_ok(ok)])
    params = {
        "Q": args.Q,
        "delta": fmt_rat(args.delta),
        "n_random": args.n_random,
        "explicit_alphas": [fmt_rat(a) for a in (args.alpha or [])],
    }
    return header, rows, n_fail, params


def _cmd_beta_grid(args):
    grid = beta_grid(args.delta)
    values = [form.value for form in grid]
    header = ["idx", "b", "r", "k", "z", "value"]
    rows = [
        [str(i), str(f.b), str(f.r), str(f.k), fmt_rat(f.z), fmt_rat(f.value)]
        for i, f in enumerate(grid)
    ]
    rng = random.Random(args.seed)
    n_fail = sum(
        covering_distance(alpha, values) > args.delta
        for alpha in _seeded_rationals(rng, args.n_random, 10**9)
    )
    params = {
        "delta": fmt_rat(args.delta),
        "n_beta": len(grid),
        "n_random": args.n_random,
    }
    return header, rows, n_fail, params


def _cmd_poisson_check(args):
    header = ["alpha", "Q", "delta", "residual", "tol", "ok"]
    rows, n_fail = [], 0
    for alpha in args.alpha:
        res = poisson_identity_residual(alpha, args.Q, args.delta)
        ok = res <= args.tol
        n_fail += not ok
        rows.append(
            [
                fmt_rat(alpha),
                str(args.Q),
                fmt_rat(args.delta),
                fmt_float(res),
                fmt_float(args.tol),
                fmt_ok(ok),
            ]
        )
    params = {
        "Q": args.Q,
        "delta": fmt_rat(args.delta),
        "alphas": [fmt_rat(a) for a in args.alpha],
        "tol": args.tol,
    }
    return header, rows, n_fail, params


def _cmd_gauss_check(args):
    header = ["a", "l", "c", "abs_G", "bound", "ok"]
    rows, n_fail = [], 0
    for c in range(1, args.cmax + 1):
        bound = 2.0 * math.sqrt(c) + 1e-9
        for a in range(1, c + 1):
            if math.gcd(a, c) != 1:
                continue
            row_vals = gauss_row(a % c, c)
            for l in range(c):
                absg = abs(row_vals[l])
                ok = absg <= bound
                n_fail += not ok
                rows.append(
                    [str(a), str(l), str(c), fmt_float(absg), fmt_float(bound), fmt_ok(ok)]
                )
    params = {"cmax": args.cmax}
    return header, rows, n_fail, params


_OSC_GRID = tuple(
    (A, B, Nw)
    for A in (0.5, 2.0, 8.0)
    for B in (-20.0, -1.0, 0.0, 1.0, 20.0)
    for Nw in (1.0, 100.0, 10000.0)
)


def _cmd_oscint_check(args):
    header = [
        "A",
        "B",
        "Nw",
        "quad_re",
        "quad_im",
        "closed_re",
        "closed_im",
        "close_err",
        "asym_residual",
        "asym_budget",
        "opp_bound",
        "ok",
    ]
    rows, n_fail = [], 0
    for A, B, Nw in _OSC_GRID:
        spec = OscIntegralSpec(A=A, B=B, Nw=Nw)
        quad = eval_E_quadrature(spec, tol=args.tol)
        closed = eval_E_closed_form(spec)
        err = abs(quad - closed)
        ok = err <= 100.0 * args.tol
        asym_res = asym_budget = opp = ""
        if A * B > 0:
            main, budget = eval_E_asymptotic(spec)
            res = abs(quad - main)
            ok = ok and res <= args.ctest * budget
            asym_res, asym_budget = fmt_float(res), fmt_float(budget)
        elif A * B < 0:
            bound = bound_E_opposite_sign(spec)
            ok = ok and abs(quad) <= args.ctest * bound
            opp = fmt_float(bound)
        n_fail += not ok
        rows.append(
            [
                fmt_float(A),
                fmt_float(B),
                fmt_float(Nw),
                fmt_float(quad.real),
                fmt_float(quad.imag),
                fmt_float(closed.real),
                fmt_float(closed.imag),
                fmt_float(err),
                asym_res,
                asym_budget,
                opp,
                fmt_ok(ok),
            ]
        )
    params = {"tol": args.tol, "grid_cells": len(_OSC_GRID)}
    return header, rows, n_fail, params


def _cmd_weyl_check(args):
    rng = random.Random(args.seed)
    header = ["alpha", "N", "start", "lhs", "rhs", "ok"]
    rows, n_fail = [], 0
    for _ in range(args.n_instances):
        q = rng.randint(1, 10**4)
        p = rng.randint(0, q - 1)
        inst = WeylInstance(
            alpha=Fraction(p, q),
            N=rng.randint(1, args.nmax),
            start=rng.randint(-50, 50),
        )
        lhs, rhs, ok = weyl_shift_check(inst)
        n_fail += not ok
        rows.append(
            [
                fmt_rat(inst.alpha),
                str(inst.N),
                str(inst.start),
                fmt_float(lhs),
                fmt_float(rhs),
                fmt_ok(ok),
            ]
        )
    params = {"n_instances": args.n_instances, "nmax": args.nmax}
    return header, rows, n_fail, params


def _random_congruence(rng: random.Random, eps: float, delta: Fraction):
    # H >= 2: the inclusive block [H, 2H] holds H+1 values, and at H = 1 that
    # endpoint doubling alone pushes the count past the conformance budget
    while True:
        rstar = rng.randint(1, 12)
        kstar = rng.randint(1, 6)
        a = rng.randint(1, rstar)
        if math.gcd(kstar * rstar + a, rstar) != 1:
            continue
        Q0 = rng.randint(1, 400)
        eps_factor = (Q0 / float(delta)) ** eps
        return CongruenceInstance(
            J=rng.randint(1, 6),
            H=rng.randint(2, 8),
            a=a,
            kstar=kstar,
            rstar=rstar,
            z=Fraction(1, rng.randint(1, 50)),
            r=rstar * rng.randint(1, 4),
            Q0=Q0,
            eps_factor=eps_factor,
        )


def _cmd_congruence_check(args):
    rng = random.Random(args.seed)
    header = ["J", "H", "a", "kstar", "rstar", "z", "r", "Q0", "count", "budget", "ok"]
    rows, n_fail = [], 0
    for _ in range(args.n_instances):
        inst = _random_congruence(rng, args.eps, args.delta)
        count, budget, ok = congruence_bound_check(inst)
        n_fail += not ok
        rows.append(
            [
                str(inst.J),
                str(inst.H),
                str(inst.a),
                str(inst.kstar),
                str(inst.rstar),
                fmt_rat(inst.z),
                str(inst.r),
                str(inst.Q0),
                str(count),
                fmt_float(budget),
                fmt_ok(ok),
            ]
        )
    params = {"n_instances": args.n_instances, "delta": fmt_rat(args.delta)}
    return header, rows, n_fail, params


def _cmd_p_alpha(args):
    reports = p_alpha_experiment(args.Q, args.delta, eps=args.eps)
    header = [
        "Q",
        "delta",
        "n_beta",
        "max_count",
        "max_ratio_first",
        "max_ratio_second",
        "max_ratio_dispatch",
        "max_ratio_combined",
        "worst_beta",
        "n_smallz",
        "max_ratio_smallz",
        "ok",
    ]
    rows, n_fail = [], 0
    for rep in reports:
        ok = (
            rep.max_ratio_dispatch <= args.ctest
            and rep.max_ratio_combined <= args.ctest
        )
        n_fail += not ok
        rows.append(
            [
                str(rep.Q),
                fmt_rat(rep.Delta),
                str(rep.n_beta),
                str(rep.max_count),
                fmt_float(rep.max_ratio_first),
                fmt_float(rep.max_ratio_second),
                fmt_float(rep.max_ratio_dispatch),
                fmt_float(rep.max_ratio_combined),
                fmt_rat(rep.worst_beta),
                str(rep.n_smallz),
                fmt_float(rep.max_ratio_smallz),
                fmt_ok(ok),
            ]
        )
    params = {"Q": args.Q, "delta": [fmt_rat(d) for d in args.delta]}
    return header, rows, n_fail, params


_HANDLERS = {
    "sieve-ratio": _cmd_sieve_ratio,
    "farey-count": _cmd_farey_count,
    "beta-grid": _cmd_beta_grid,
    "poisson-check": _cmd_poisson_check,
    "gauss-check": _cmd_gauss_check,
    "oscint-check": _cmd_oscint_check,
    "weyl-check": _cmd_weyl_check,
    "congruence-check": _cmd_congruence_check,
    "p-alpha": _cmd_p_alpha,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="sqsieve", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eps", type=float, default=0.05)
    common.add_argument("--ctest", type=float, default=10.0)
    common.add_argument("--out-dir", default=".")
    common.add_argument("--threads", type=int, default=None)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("sieve-ratio", parents=[common])
    p.add_argument("--Q", type=int, nargs="+", default=[1, 2, 4])
    p.add_argument("--N", type=int, nargs="+", default=[16, 64])

    p = sub.add_parser("farey-count", parents=[common])
    p.add_argument("--Q", type=int, default=4)
    p.add_argument("--delta", type=parse_rational, default=Fraction(1, 64))
    p.add_argument("--alpha", type=parse_rational, nargs="*")
    p.add_argument("--n-random", type=int, default=8)

    p = sub.add_parser("beta-grid", parents=[common])
    p.add_argument("--delta", type=parse_rational, default=Fraction(1, 64))
    p.add_argument("--n-random", type=int, default=200)

    p = sub.add_parser("poisson-check", parents=[common])
    p.add_argument("--Q", type=int, default=4)
    p.add_argument("--delta", type=parse_rational, default=Fraction(1, 64))
    p.add_argument(
        "--alpha", type=parse_rational, nargs="+", default=[Fraction(1, 3)]
    )
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("gauss-check", parents=[common])
    p.add_argument("--cmax", type=int, default=40)

    p = sub.add_parser("oscint-check", parents=[common])
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("weyl-check", parents=[common])
    p.add_argument("--n-instances", type=int, default=200)
    p.add_argument("--nmax", type=int, default=300)

    p = sub.add_parser("congruence-check", parents=[common])
    p.add_argument("--n-instances", type=int, default=100)
    p.add_argument("--delta", type=parse_rational, default=Fraction(1, 64))

    p = sub.add_parser("p-alpha", parents=[common])
    p.add_argument("--Q", type=int, nargs="+", default=[2, 4])
    p.add_argument(
        "--delta",
        type=parse_rational,
        nargs="+",
        default=[Fraction(1, 64), Fraction(1, 256)],
    )
    return parser


def _emit(command, args, header, rows, n_fail, params, wall) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{command}.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    digest = hashlib.sha256(csv_path.read_bytes()).hexdigest()
    manifest = {
        "command": command,
        "parameters": params,
        "seed": args.seed,
        "eps_used": args.eps,
        "C_test": args.ctest,
        "version": __version__,
        "wall_time_s": round(wall, 6),
        "rows": len(rows),
        "failures": n_fail,
        "files": {csv_path.name: f"sha256:{digest}"},
    }
    manifest_path = out_dir / f"{command}.manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    print(f"{command}: {len(rows)} rows, {n_fail} failures -> {csv_path}")
    return 2 if n_fail else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.error("a subcommand is required")
    start = time.perf_counter()
    header, rows, n_fail, params = _HANDLERS[args.command](args)
    return _emit(
        args.command, args, header, rows, n_fail, params, time.perf_counter() - start
    )


if __name__ == "__main__":
    sys.exit(main())
