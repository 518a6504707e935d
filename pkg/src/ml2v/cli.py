"""Command-line front end: point evaluation, grid sweeps, cross-method
comparison, and the invariant self-test suite.

Output contract: CSV rows under the fixed header

    alpha,beta,mu_re,mu_im,x_re,x_im,y_re,y_im,val_re,val_im,est_error,method,case,ms

or JSON carrying the same fields; numbers are printed at 17 significant
digits in both formats so they parse to identical doubles.  Exit codes:
0 success, 1 selftest failure, 2 domain error, 3 numeric failure.
Complex literals on the command line are "a+bi" / "a-bi" / "a" with no
spaces (a trailing j is accepted too).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .asymptotics import TruncationOrders, eval_asymptotic
from .core import ContourSpec, Evaluation, Parameters, validate_params
from .errors import (
    BudgetExceeded,
    DegenerateDenominator,
    DomainError,
    GeometryError,
    MagnitudeFloor,
    PoleProximityError,
    QuadratureError,
    RegionError,
)
from .oracle import load_corpus, oracle_eval
from .representations import (
    ASYMPTOTIC_RADIUS,
    choose_contour,
    eval_auto,
    eval_lemma1,
    eval_lemma2,
    eval_lemma3,
    eval_remark1,
    eval_with_contour,
)
from .selftest import SUITES, run_suites
from .series import SeriesBudget, eval_double_series

CSV_HEADER = (
    "alpha,beta,mu_re,mu_im,x_re,x_im,y_re,y_im,"
    "val_re,val_im,est_error,method,case,ms"
)

METHODS = ("auto", "series", "lemma1", "lemma2", "remark1", "lemma3", "asymptotic", "oracle")

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3

_EPS = 2.220446049250313e-16

_NUMERIC_ERRORS = (
    QuadratureError,
    PoleProximityError,
    RegionError,
    DegenerateDenominator,
    MagnitudeFloor,
    BudgetExceeded,
    GeometryError,
)


def parse_complex(text: str) -> complex:
    """Parse "a+bi" / "a-bi" / "a"; no spaces or parentheses."""
    s = str(text).strip()
    if not s or any(ch.isspace() for ch in s) or "(" in s or ")" in s:
        raise DomainError(f"bad complex literal {text!r}")
    try:
        return complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise DomainError(f"bad complex literal {text!r}") from None


def fmt17(v: float) -> str:
    return f"{float(v):.17g}"


def num17(v: float) -> float:
    # round-trip through the printed form so CSV and JSON parse identically
    return float(fmt17(v))


def _c_str(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}i"


def _split_method(tag: str) -> tuple[str, str]:
    if tag.startswith("asymptotic-"):
        return "asymptotic", tag.split("-", 1)[1]
    return tag, ""


def make_row(params: Parameters, x: complex, y: complex, ev: Evaluation | None,
             method: str, ms: float) -> dict:
    """One ResultRecord; ev None means the point failed (est_error inf)."""
    if ev is None:
        val_re = val_im = math.nan
        est: float = math.inf
        tag, case = method, ""
    else:
        val_re, val_im = ev.value.real, ev.value.imag
        est = ev.est_error
        tag, case = _split_method(ev.method)
    return {
        "alpha": params.alpha,
        "beta": params.beta,
        "mu_re": params.mu.real,
        "mu_im": params.mu.imag,
        "x_re": x.real,
        "x_im": x.imag,
        "y_re": y.real,
        "y_im": y.imag,
        "val_re": val_re,
        "val_im": val_im,
        "est_error": est,
        "method": tag,
        "case": case,
        "ms": round(ms, 3),
    }


def _csv_line(row: dict) -> str:
    fields = []
    for key in CSV_HEADER.split(","):
        v = row[key]
        fields.append(v if isinstance(v, str) else fmt17(v))
    return ",".join(fields)


def _json_obj(row: dict) -> dict:
    out = {}
    for key in CSV_HEADER.split(","):
        v = row[key]
        if isinstance(v, str):
            out[key] = v
        elif isinstance(v, float) and math.isnan(v):
            out[key] = None
        elif isinstance(v, float) and math.isinf(v):
            out[key] = "inf"
        else:
            out[key] = num17(v)
    return out


def emit_rows(rows: list[dict], fmt: str, single: bool = False) -> None:
    if fmt == "csv":
        print(CSV_HEADER)
        for row in rows:
            print(_csv_line(row))
    else:
        objs = [_json_obj(r) for r in rows]
        payload = objs[0] if single and len(objs) == 1 else objs
        print(json.dumps(payload, indent=2))


def _contour_for(args, x: complex, y: complex, params: Parameters) -> ContourSpec:
    if args.epsilon is None and args.theta is None:
        return choose_contour(x, y, params)
    base = choose_contour(x, y, params)
    return ContourSpec(
        args.epsilon if args.epsilon is not None else base.epsilon,
        args.theta if args.theta is not None else base.theta,
    )


def evaluate_point(args, x: complex, y: complex, params: Parameters,
                   method: str, tol: float) -> Evaluation:
    if method == "auto":
        return eval_auto(x, y, params, tol)
    if method == "series":
        return eval_double_series(x, y, params, SeriesBudget(tol=min(tol, 1e-10)))
    if method == "asymptotic":
        return eval_asymptotic(x, y, params, TruncationOrders(args.p_alpha, args.p_beta))
    if method == "oracle":
        ov = oracle_eval(x, y, params, digits=30)
        v = ov.as_complex()
        return Evaluation(v, float(ov.tail_bound) + 4.0 * _EPS * abs(v), "oracle")
    lemma = {
        "lemma1": eval_lemma1,
        "lemma2": eval_lemma2,
        "remark1": eval_remark1,
        "lemma3": eval_lemma3,
    }[method]
    spec = _contour_for(args, x, y, params)
    return lemma(x, y, params, spec, tol)


def _params_from(args) -> Parameters:
    mu = parse_complex(args.mu)
    return validate_params(args.alpha, args.beta, mu)


def _axis_values(args, name: str) -> list[complex]:
    point = getattr(args, name)
    lo = getattr(args, f"{name}_min")
    hi = getattr(args, f"{name}_max")
    count = getattr(args, f"{name}_count")
    if point is not None:
        return [parse_complex(point)]
    if lo is None or hi is None:
        raise DomainError(f"grid needs --{name} or both --{name}-min and --{name}-max")
    if count < 1:
        raise DomainError(f"--{name}-count must be >= 1, got {count}")
    zlo, zhi = parse_complex(lo), parse_complex(hi)
    if count == 1:
        return [zlo]
    return [zlo + (zhi - zlo) * (k / (count - 1)) for k in range(count)]


def cmd_eval(args) -> int:
    params = _params_from(args)
    x, y = parse_complex(args.x), parse_complex(args.y)
    tol = args.tol if args.tol is not None else 1e-8
    t0 = time.perf_counter()
    try:
        ev = evaluate_point(args, x, y, params, args.method, tol)
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    ms = (time.perf_counter() - t0) * 1e3
    emit_rows([make_row(params, x, y, ev, args.method, ms)], args.format, single=True)
    if not math.isfinite(ev.est_error):
        print("numeric failure: no certified error estimate", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_grid(args) -> int:
    params = _params_from(args)
    xs = _axis_values(args, "x")
    ys = _axis_values(args, "y")
    tol = args.tol if args.tol is not None else 1e-8
    rows = []
    failures = 0
    for x in xs:                      # x-major row order
        for y in ys:
            t0 = time.perf_counter()
            try:
                ev = evaluate_point(args, x, y, params, args.method, tol)
                if not math.isfinite(ev.est_error):
                    raise BudgetExceeded("no certified error estimate")
            except (_NUMERIC_ERRORS + (DomainError,)) as exc:
                ms = (time.perf_counter() - t0) * 1e3
                print(f"point x={_c_str(x)} y={_c_str(y)} failed: {exc}", file=sys.stderr)
                rows.append(make_row(params, x, y, None, args.method, ms))
                failures += 1
                continue
            ms = (time.perf_counter() - t0) * 1e3
            rows.append(make_row(params, x, y, ev, args.method, ms))
    emit_rows(rows, args.format)
    return EXIT_NUMERIC if failures else EXIT_OK


def _compare_methods(args, x: complex, y: complex, params: Parameters,
                     tol: float) -> list[tuple[str, Evaluation | None, str]]:
    """(name, evaluation-or-None, note) for every applicable method."""
    entries: list[tuple[str, Evaluation | None, str]] = []
    try:
        entries.append(("series", eval_double_series(
            x, y, params, SeriesBudget(tol=min(tol, 1e-10))), ""))
    except _NUMERIC_ERRORS as exc:
        entries.append(("series", None, f"skipped: {exc}"))

    spec = _contour_for(args, x, y, params)
    try:
        ev = eval_with_contour(x, y, params, spec, tol)
        entries.append((ev.method, ev, ""))
    except DegenerateDenominator:
        entries.append(("lemma3", None, "skipped: degenerate"))
    except RegionError:
        entries.append(("contour", None, "skipped: image on contour"))
    except _NUMERIC_ERRORS as exc:
        entries.append(("contour", None, f"skipped: {exc}"))

    if min(abs(x), abs(y)) >= ASYMPTOTIC_RADIUS:
        try:
            ev = eval_asymptotic(x, y, params, TruncationOrders(args.p_alpha, args.p_beta))
            entries.append((_split_method(ev.method)[0], ev, ""))
        except (_NUMERIC_ERRORS + (DomainError,)) as exc:
            entries.append(("asymptotic", None, f"skipped: {exc}"))
    return entries


def _compare_corpus(args) -> int:
    path = None if args.corpus == "__packaged__" else args.corpus
    records = load_corpus(path)
    tol = args.tol if args.tol is not None else 1e-7
    worst = 0.0
    flagged = 0
    for i, rec in enumerate(records):
        ref = rec.value()
        try:
            ev = eval_auto(rec.x, rec.y, rec.params(), tol=1e-8)
        except (_NUMERIC_ERRORS + (DomainError,)) as exc:
            print(f"record {i}: FLAG ({type(exc).__name__}: {exc})")
            flagged += 1
            continue
        delta = abs(ev.value - ref)
        worst = max(worst, delta)
        ok = delta <= tol
        flagged += 0 if ok else 1
        print(
            f"record {i}: alpha={rec.alpha:g} beta={rec.beta:g} "
            f"x={_c_str(rec.x)} y={_c_str(rec.y)} method={ev.method} "
            f"|delta| {delta:.3e} {'ok' if ok else 'FLAG'}"
        )
    print(f"max |delta| = {fmt17(worst)}")
    print(f"flagged: {flagged} of {len(records)}")
    return EXIT_OK if flagged == 0 else EXIT_NUMERIC


def cmd_compare(args) -> int:
    if args.corpus is not None:
        return _compare_corpus(args)
    if args.alpha is None or args.beta is None:
        raise DomainError("compare needs --alpha and --beta (or --corpus)")
    params = _params_from(args)
    xs = _axis_values(args, "x")
    ys = _axis_values(args, "y")
    tol = args.tol if args.tol is not None else 1e-8
    worst = 0.0
    flagged = 0
    for x in xs:
        for y in ys:
            print(f"point x={_c_str(x)} y={_c_str(y)}")
            entries = _compare_methods(args, x, y, params, tol)
            for name, ev, note in entries:
                if ev is None:
                    print(f"  {name}: {note}")
                else:
                    print(
                        f"  {name}: value {fmt17(ev.value.real)} "
                        f"{fmt17(ev.value.imag)}  est {ev.est_error:.3e}"
                    )
            usable = [(n, e) for n, e, _ in entries if e is not None]
            for i in range(len(usable)):
                for j in range(i + 1, len(usable)):
                    (n1, e1), (n2, e2) = usable[i], usable[j]
                    delta = abs(e1.value - e2.value)
                    limit = e1.est_error + e2.est_error + tol * max(
                        1.0, abs(e1.value), abs(e2.value)
                    )
                    worst = max(worst, delta)
                    ok = delta <= limit
                    flagged += 0 if ok else 1
                    print(
                        f"  pair {n1}/{n2}: |delta| {delta:.3e} "
                        f"limit {limit:.3e} {'ok' if ok else 'FLAG'}"
                    )
    print(f"max |delta| = {fmt17(worst)}")
    print(f"flagged: {flagged}")
    return EXIT_OK if flagged == 0 else EXIT_NUMERIC


def cmd_selftest(args) -> int:
    names = args.suite if args.suite else None
    results = run_suites(names)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  {r.detail}")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail} of {len(results)} suites passed")
    return EXIT_OK if n_fail == 0 else EXIT_SELFTEST


def _add_param_flags(sp, required: bool = True) -> None:
    sp.add_argument("--alpha", type=float, required=required, help="first order (> 0)")
    sp.add_argument("--beta", type=float, required=required, help="second order (> 0)")
    sp.add_argument("--mu", default="1", help="offset, complex literal a+bi")
    sp.add_argument("--tol", type=float, default=None, help="target absolute tolerance")
    sp.add_argument("--p-alpha", type=int, default=3, help="asymptotic truncation order (y sum)")
    sp.add_argument("--p-beta", type=int, default=3, help="asymptotic truncation order (x sum)")
    sp.add_argument("--epsilon", type=float, default=None, help="contour arc radius override")
    sp.add_argument("--theta", type=float, default=None, help="contour ray angle override")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_axis_flags(sp) -> None:
    for name in ("x", "y"):
        sp.add_argument(f"--{name}", default=None, help=f"fixed {name}, complex literal")
        sp.add_argument(f"--{name}-min", default=None, help=f"{name} range start")
        sp.add_argument(f"--{name}-max", default=None, help=f"{name} range end")
        sp.add_argument(f"--{name}-count", type=int, default=5, help=f"{name} sample count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ml2v",
        description="Two-variable Mittag-Leffler function E_{alpha,beta}(x, y; mu)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate at a single point")
    _add_param_flags(p_eval)
    p_eval.add_argument("--x", required=True, help="first argument, complex literal")
    p_eval.add_argument("--y", required=True, help="second argument, complex literal")
    p_eval.add_argument("--method", choices=METHODS, default="auto")
    p_eval.set_defaults(func=cmd_eval)

    p_grid = sub.add_parser("grid", help="sweep a grid of points")
    _add_param_flags(p_grid)
    _add_axis_flags(p_grid)
    p_grid.add_argument("--method", choices=METHODS, default="auto")
    p_grid.set_defaults(func=cmd_grid)

    p_cmp = sub.add_parser("compare", help="cross-check every applicable method")
    _add_param_flags(p_cmp, required=False)
    _add_axis_flags(p_cmp)
    p_cmp.add_argument(
        "--corpus",
        nargs="?",
        const="__packaged__",
        default=None,
        metavar="PATH",
        help="replay the frozen oracle corpus (optional path)",
    )
    p_cmp.set_defaults(func=cmd_compare)

    p_self = sub.add_parser("selftest", help="run the invariant suites")
    p_self.add_argument(
        "--suite", action="append", choices=SUITES, help="run only this suite (repeatable)"
    )
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
