"""Command-line front end.

Subcommands: eval, ode-solve, ode-check, diverge, compare, cr-check and
counterexample.  Exit codes: 0 on success, 1 when a checked assertion
fails, 2 on usage, parse or type errors.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .fps import SeriesU, SeriesM
from .field import (
    PuiseuxSeries,
    IndeterminateMembership,
    UndeterminedValuation,
    compare,
)
from .complexfield import coordinate_series, cr_check
from .ode import LinearODE, solve, residual, first_nonzero
from .divergence import certify_divergence
from .expressions import (
    ExprSyntaxError,
    EvaluationError,
    evaluate_text,
    parse_ode,
)
from . import render


def _rational(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _fail(message: str, code: int) -> int:
    print(message, file=sys.stderr)
    return code


# ----------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    value = evaluate_text(args.expression)
    _emit(args, render.value_text(value, args.order), render.value_json(value, args.order))
    return 0


def cmd_ode_solve(args) -> int:
    ode = parse_ode(args.equation)
    sol = solve(ode, initial=args.initial)
    coeffs = sol.series.coeffs(args.order + 1)
    text = "F = {}\na_0..a_{} = {}".format(
        render.series_text(sol.series, args.order),
        args.order,
        ", ".join(str(c) for c in coeffs),
    )
    payload = {
        "type": "ode-solution",
        "regime": sol.regime,
        "order": args.order,
        "coefficients": [render.frac_json(c) for c in coeffs],
    }
    _emit(args, text, payload)
    return 0


def cmd_ode_check(args) -> int:
    ode = parse_ode(args.equation)
    if args.solution is not None:
        series = evaluate_text(args.solution)
        if isinstance(series, Fraction):
            series = SeriesU.constant(series)
        if not isinstance(series, SeriesU):
            raise EvaluationError("the solution must be a series in z")
    else:
        series = solve(ode, initial=args.initial).series
    bad = first_nonzero(residual(ode, series, args.order))
    ok = bad is None
    payload = {
        "type": "residual-check",
        "order": args.order,
        "pass": ok,
        "first_nonzero": bad,
    }
    if ok:
        _emit(args, f"residual zero through order {args.order}", payload)
        return 0
    _emit(args, f"FAIL: first nonzero residual coefficient at index {bad}", payload)
    return 1


def cmd_diverge(args) -> int:
    value = evaluate_text(args.expression)
    if isinstance(value, Fraction):
        value = SeriesU.constant(value)
    if not isinstance(value, SeriesU):
        raise EvaluationError("divergence certification needs a series in z")
    cert = certify_divergence(value, args.r, args.M, args.nmax)
    if cert is None:
        payload = {"type": "divergence-not-found", "nmax": args.nmax}
        _emit(args, f"no term exceeds M = {args.M} at radius {args.r} up to n = {args.nmax}", payload)
        return 1
    text = f"divergent at radius {cert.r}: |a_{cert.n}| * r^{cert.n} = {cert.witness} > {cert.M}"
    _emit(args, text, cert.to_json_dict())
    return 0


def cmd_compare(args) -> int:
    left = evaluate_text(args.left)
    right = evaluate_text(args.right)
    for v in (left, right):
        if isinstance(v, (SeriesU, SeriesM)):
            raise EvaluationError("compare works on Puiseux elements and rationals")
    left = PuiseuxSeries._coerce(left)
    right = PuiseuxSeries._coerce(right)
    c = compare(left, right, args.order)
    word = {-1: "less", 1: "greater"}.get(c, f"equal_through({args.order})")
    payload = {"type": "comparison", "order": args.order, "result": word}
    _emit(args, word, payload)
    return 0


def _cr_one(series: SeriesU, degree: int):
    p1, p2 = coordinate_series(series)
    return cr_check(p1, p2, degree)


def cmd_cr_check(args) -> int:
    degree = args.degree
    if args.random is not None:
        rng = random.Random(args.seed)
        pool = [Fraction(n, d) for n in range(-4, 5) for d in (1, 2, 3)]
        failures = []
        for trial in range(args.random):
            coeffs = [rng.choice(pool) for _ in range(degree + 2)]
            report = _cr_one(SeriesU.from_coeffs(coeffs), degree)
            if not report.passed:
                failures.append(trial)
        ok = not failures
        payload = {
            "type": "cr-check",
            "mode": "random",
            "count": args.random,
            "degree": degree,
            "pass": ok,
            "failures": failures,
        }
        _emit(
            args,
            f"cauchy-riemann {'PASS' if ok else 'FAIL'} on {args.random} random series through degree {degree}",
            payload,
        )
        return 0 if ok else 1

    if args.p1 is not None or args.p2 is not None:
        if args.p1 is None or args.p2 is None:
            raise EvaluationError("--p1 and --p2 must be given together")
        pair = []
        for text in (args.p1, args.p2):
            value = evaluate_text(text)
            if isinstance(value, Fraction):
                value = SeriesM.constant(2, value)
            if not isinstance(value, SeriesM):
                raise EvaluationError("--p1/--p2 must be series in x and y")
            pair.append(value)
        report = cr_check(pair[0], pair[1], degree)
    elif args.expression is not None:
        value = evaluate_text(args.expression)
        if isinstance(value, Fraction):
            value = SeriesU.constant(value)
        if not isinstance(value, SeriesU):
            raise EvaluationError("cr-check of a single expression needs a series in z")
        report = _cr_one(value, degree)
    else:
        raise EvaluationError("give an expression, or --p1 and --p2")

    payload = {
        "type": "cr-check",
        "degree": degree,
        "pass": report.passed,
    }
    if report.passed:
        _emit(args, f"cauchy-riemann PASS through degree {degree}", payload)
        return 0
    identity, alpha = report.first_offense
    payload["first_offense"] = {
        "identity": identity,
        "monomial": list(alpha),
        "degree": report.offense_degree,
    }
    _emit(
        args,
        f"cauchy-riemann FAIL: identity {identity} breaks at degree {report.offense_degree}",
        payload,
    )
    return 1


def _perturb(series: SeriesU, index: int, delta: Fraction) -> SeriesU:
    return SeriesU(lambda n: series.coeff(n) + (delta if n == index else 0))


def cmd_counterexample(args) -> int:
    order = args.order
    show = min(order, 12)
    ode = LinearODE.factorial_ode()
    sol = solve(ode)
    stages = []
    failed = None

    # stage 1: the recurrence reproduces a_n = (n-1)!, checked independently
    coeffs = [sol.series.coeff(n) for n in range(1, order + 1)]
    ok1 = all(c == math.factorial(n - 1) for n, c in enumerate(coeffs, start=1))
    shown = ", ".join(str(c) for c in coeffs[:show])
    stages.append(
        {
            "name": "recurrence",
            "pass": ok1,
            "checked_through": order,
            "leading_coefficients": [render.frac_json(c) for c in coeffs[:show]],
        }
    )
    lines = [f"stage 1 recurrence: {'PASS' if ok1 else 'FAIL'}  a_n = (n-1)! for 1 <= n <= {order}; a_1..a_{show} = {shown}"]
    if not ok1:
        failed = "recurrence"

    series = sol.series
    if args.tamper and failed is None:
        # test hook: hand the later stages a stream with a_5 bumped by one
        series = _perturb(series, 5, Fraction(1))

    if failed is None:
        bad = first_nonzero(residual(ode, series, order + 1))
        ok2 = bad is None
        stages.append(
            {"name": "residual", "pass": ok2, "checked_through": order, "first_nonzero": bad}
        )
        lines.append(
            f"stage 2 residual: {'PASS' if ok2 else 'FAIL'}  A*F' + B*F - C "
            + (f"= 0 through order {order}" if ok2 else f"has a nonzero coefficient at index {bad}")
        )
        if not ok2:
            failed = "residual"

    if failed is None:
        degree = min(order, 12)
        p1, p2 = coordinate_series(series)
        report = cr_check(p1, p2, degree)
        stages.append({"name": "cauchy-riemann", "pass": report.passed, "degree": degree})
        lines.append(
            f"stage 3 cauchy-riemann: {'PASS' if report.passed else 'FAIL'}  coordinate series through degree {degree}"
        )
        if not report.passed:
            failed = "cauchy-riemann"

    if failed is None:
        cert = certify_divergence(series, args.r, args.M, args.nmax)
        ok4 = cert is not None and cert.validate()
        stage = {"name": "divergence", "pass": ok4}
        if cert is not None:
            stage["certificate"] = cert.to_json_dict()
            lines.append(
                f"stage 4 divergence: {'PASS' if ok4 else 'FAIL'}  |a_{cert.n}| * ({cert.r})^{cert.n} = {cert.witness} > {cert.M}"
            )
        else:
            lines.append(
                f"stage 4 divergence: FAIL  no witness up to n = {args.nmax} for r = {args.r}, M = {args.M}"
            )
        stages.append(stage)
        if not ok4:
            failed = "divergence"

    ok = failed is None
    lines.append(
        f"counterexample: PASS ({len(stages)}/4 stages)" if ok else f"counterexample: FAIL at stage {failed}"
    )
    payload = {
        "type": "counterexample",
        "order": order,
        "r": render.frac_json(args.r),
        "M": render.frac_json(args.M),
        "nmax": args.nmax,
        "stages": stages,
        "ok": ok,
    }
    if not ok:
        payload["failed_stage"] = failed
    _emit(args, "\n".join(lines), payload)
    return 0 if ok else 1


# ----------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=20, help="exponent/order bound (default 20)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized demo modes")

    parser = argparse.ArgumentParser(
        prog="puiseux",
        description="Exact arithmetic for formal power series and Puiseux fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expression")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("ode-solve", parents=[common], help="solve A*F' + B*F = C formally")
    p.add_argument("equation", help='e.g. "z^2*F\' - F = -z"')
    p.add_argument("--initial", type=_rational, default=None, help="F(0) in the IVP regime")
    p.set_defaults(handler=cmd_ode_solve)

    p = sub.add_parser("ode-check", parents=[common], help="verify a residual is zero")
    p.add_argument("equation")
    p.add_argument("--solution", default=None, help="series expression to check instead of solving")
    p.add_argument("--initial", type=_rational, default=None)
    p.set_defaults(handler=cmd_ode_check)

    p = sub.add_parser("diverge", parents=[common], help="emit a divergence certificate")
    p.add_argument("expression")
    p.add_argument("--r", type=_rational, required=True, help="test radius (exact rational)")
    p.add_argument("--M", type=_rational, required=True, help="bound to exceed (exact rational)")
    p.add_argument("--nmax", type=int, default=1000, help="scan limit (default 1000)")
    p.set_defaults(handler=cmd_diverge)

    p = sub.add_parser("compare", parents=[common], help="order two Puiseux elements")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("cr-check", parents=[common], help="Cauchy-Riemann verification")
    p.add_argument("expression", nargs="?", default=None)
    p.add_argument("--p1", default=None, help="real coordinate series in x, y")
    p.add_argument("--p2", default=None, help="imaginary coordinate series in x, y")
    p.add_argument("--degree", type=int, default=12, help="total degree bound (default 12)")
    p.add_argument("--random", type=int, default=None, help="check N random series instead")
    p.set_defaults(handler=cmd_cr_check)

    p = sub.add_parser(
        "counterexample",
        parents=[common],
        help="replay the full pipeline: recurrence, residual, CR, divergence",
    )
    p.add_argument("--r", type=_rational, default=Fraction(1, 10))
    p.add_argument("--M", type=_rational, default=Fraction(10**6))
    p.add_argument("--nmax", type=int, default=100)
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_counterexample)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ExprSyntaxError, EvaluationError) as exc:
        return _fail(f"error: {exc}", 2)
    except (IndeterminateMembership, UndeterminedValuation) as exc:
        return _fail(f"error: {exc}", 2)
    except (ValueError, ZeroDivisionError) as exc:
        return _fail(f"error: {exc}", 2)


if __name__ == "__main__":
    sys.exit(main())
