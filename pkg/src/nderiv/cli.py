"""Command line interface.

Every subcommand writes one JSON report to stdout and a short summary to
stderr. Exit status: 0 when the check passes, 1 when it is verified false,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .blackbox import BlackBoxFunc
from .characterize import NotPolynomialError, decompose_linear_part, poly_decompose
from .exactfield import format_rational, render_poly
from .operators import is_order_n_derivation
from .parser import ExprError, parse_operator, parse_rational_expr, parse_scalar
from .stability import add_noise, approx_derivation_recover, make_noisy

SCHEMA_VERSION = 1
DEFAULT_SEED = 0


def make_report(command: str, inputs: dict, result: dict, seed: int, passed: bool) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "pass": passed,
        "result": result,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def cmd_check_order(expr: str, n: int, trials: int = 16, seed: int = DEFAULT_SEED) -> dict:
    f = parse_operator(expr)
    verdict = is_order_n_derivation(f, n, trials, seed)
    inputs = {"expr": f.render(), "n": n, "trials": trials}
    return make_report("check-order", inputs, verdict.to_dict(), seed, verdict.is_order_n)


def cmd_decompose(expr: str, n: int, trials: int = 16, seed: int = DEFAULT_SEED) -> dict:
    f = parse_operator(expr)
    split = decompose_linear_part(f, n, trials, seed)
    result = split.to_dict()
    result["reconstructs"] = split.reconstruct() == f
    inputs = {"expr": f.render(), "n": n, "trials": trials}
    return make_report("decompose", inputs, result, seed, split.verdict.is_order_n)


def _scalar_blackbox(expr: str, var: str = "x"):
    u = parse_scalar(expr, var)
    text = render_poly(u.num, var) if u.is_polynomial() else u.render(var)
    return u, BlackBoxFunc(u, text), text


def cmd_poly_decompose(expr: str, n: int, probes: int = 100, seed: int = DEFAULT_SEED) -> dict:
    _, p, text = _scalar_blackbox(expr)
    inputs = {"expr": text, "n": n, "probes": probes}
    try:
        dec = poly_decompose(p, n, probes, seed)
    except NotPolynomialError as exc:
        result = {
            "degree_bound": n,
            "residual_zero": False,
            "error": str(exc),
            "witness": {"x": format_rational(exc.witness), "residual": format_rational(exc.residual)},
            "probes": probes,
            "seed": seed,
        }
        return make_report("poly-decompose", inputs, result, seed, False)
    except ZeroDivisionError as exc:
        result = {"degree_bound": n, "residual_zero": False, "error": str(exc), "witness": None,
                  "probes": probes, "seed": seed}
        return make_report("poly-decompose", inputs, result, seed, False)
    return make_report("poly-decompose", inputs, dec.to_dict(), seed, True)


def cmd_stabilize(fixture: str, N: int = 20, samples: int = 1000, seed: int = DEFAULT_SEED,
                  epsilon: Fraction = Fraction(0), range_bound: Fraction = Fraction(10),
                  n: int = 1) -> dict:
    """``fixture`` is an expression in ``x``; bounded noise of size ``epsilon`` is added."""
    u, core, text = _scalar_blackbox(fixture)
    linear = u.is_polynomial() and (u.num.degree or 0) <= 1 and u(0) == 0
    if linear:
        f = make_noisy(u(1), epsilon, seed)
    else:
        f = add_noise(core, epsilon, seed)
    report = approx_derivation_recover(f, n, N, samples, seed, range_bound)
    inputs = {
        "fixture": text,
        "epsilon": format_rational(epsilon),
        "depth": N,
        "samples": samples,
        "range_bound": format_rational(range_bound),
        "n": n,
    }
    return make_report("stabilize", inputs, report.to_dict(), seed, report.passed)


def _summary(report: dict) -> str:
    status = "PASS" if report["pass"] else "FAIL"
    res = report["result"]
    cmd = report["command"]
    if cmd == "check-order":
        extra = f"order {res['n']}" + ("" if res["witness"] is None else f", witness value {res['witness']['value']}")
    elif cmd == "decompose":
        extra = f"lambda = {res['lambda']}, derivation part = {res['derivation_part']}"
    elif cmd == "poly-decompose":
        extra = res.get("error") or " + ".join(c["trace"] for c in res["components"])
    else:
        extra = f"lambda = {res['lambda']}, epsilon_hat = {res['epsilon_hat']}"
    return f"{cmd}: {status} ({extra})"


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational_expr(text)
    except ExprError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nderiv", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def seeded(p):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default 0)")

    p = sub.add_parser("check-order", help="test whether an operator is a derivation of order n")
    p.add_argument("expr")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--trials", type=_pos, default=16)
    seeded(p)

    p = sub.add_parser("decompose", help="split an operator as d + f(1)*id")
    p.add_argument("expr")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--trials", type=_pos, default=16)
    seeded(p)

    p = sub.add_parser("poly-decompose", help="decompose a polynomial function of x into traces")
    p.add_argument("expr")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--probes", type=_pos, default=100)
    seeded(p)

    p = sub.add_parser("stabilize", help="Hyers stabilization of a noisy fixture in x")
    p.add_argument("fixture")
    p.add_argument("--depth", type=_pos, default=20)
    p.add_argument("--samples", type=_pos, default=1000)
    p.add_argument("--epsilon", type=_rational_arg, default=Fraction(0))
    p.add_argument("--range-bound", type=_rational_arg, default=Fraction(10))
    p.add_argument("--n", type=_nonneg, default=1)
    seeded(p)
    return ap


def run(args: argparse.Namespace) -> dict:
    if args.command == "check-order":
        return cmd_check_order(args.expr, args.n, args.trials, args.seed)
    if args.command == "decompose":
        return cmd_decompose(args.expr, args.n, args.trials, args.seed)
    if args.command == "poly-decompose":
        return cmd_poly_decompose(args.expr, args.n, args.probes, args.seed)
    if args.epsilon < 0:
        raise ExprError("--epsilon must be nonnegative")
    return cmd_stabilize(args.fixture, args.depth, args.samples, args.seed, args.epsilon,
                         args.range_bound, args.n)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except (ExprError, ZeroDivisionError) as exc:
        print(f"nderiv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(dumps(report))
    print(_summary(report), file=sys.stderr)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
