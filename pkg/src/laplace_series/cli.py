"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 validation / requirement
failure, 3 numerical failure (no convergence or oracle gap too large).
Diagnostics go to stderr as ``LEVEL code message`` lines.
"""

import argparse
import configparser
import csv
import io
import json
import sys

from . import catalog as C
from . import engine as E
from . import kernels as K
from .errors import (
    AccuracyError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    IntegrandError,
    ParseError,
    SeriesError,
    StructuralError,
    UnsuitableTransformError,
    ValidationError,
)
from .parser import parse_complex, parse_series_expr
from .quadrature import QuadConfig
from .report import FORMATS, emit_report, format_complex

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3

CONFIG_KEYS = {"tol": float, "max_terms": int, "talbot_m": int}

_VALIDATION_ERRORS = (ValidationError, StructuralError, DomainError, DivergenceError,
                      ConvergenceError, UnsuitableTransformError)
_NUMERICAL_ERRORS = (AccuracyError, IntegrandError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def diag(level, code, message, stream=None):
    stream = sys.stderr if stream is None else stream
    print(f"{level} {code} {' '.join(str(message).split())}", file=stream)


def exit_code_for(exc):
    if isinstance(exc, (ParseError, UsageError)):
        return EXIT_USAGE
    if isinstance(exc, _VALIDATION_ERRORS):
        return EXIT_VALIDATION
    if isinstance(exc, _NUMERICAL_ERRORS):
        return EXIT_NUMERICAL
    return EXIT_NUMERICAL


def read_config(path):
    """key = value file with keys tol, max_terms, talbot_m."""
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[cli]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for key, raw in cp["cli"].items():
        if key not in CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r} (allowed: {', '.join(CONFIG_KEYS)})")
        try:
            out[key] = CONFIG_KEYS[key](raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    return out


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_problem_args(p, need_variant=True):
    p.add_argument("series", help='series expression, e.g. "power(z=2)"')
    p.add_argument("--variant", default="base" if need_variant else None,
                   choices=[k.value for k in K.ALL_KERNELS], metavar="VARIANT")
    p.add_argument("--alpha", type=_complex_arg, default=1.0)
    p.add_argument("--beta", type=_complex_arg, default=None)
    p.add_argument("--gamma", type=_complex_arg, default=None)


def _add_common(p):
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-terms", type=int, default=None, dest="max_terms")
    p.add_argument("--talbot-m", type=int, default=None, dest="talbot_m")
    p.add_argument("--method", default="auto", choices=[m.value for m in E.Method])
    p.add_argument("--format", default="table", choices=FORMATS)
    p.add_argument("--config", default=None, help="key = value file (tol, max_terms, talbot_m)")


def build_parser():
    ap = _Parser(prog="laplace-series", description="Sum series through Laplace-transform kernels.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("eval", help="evaluate a series and cross-check it against a direct sum")
    _add_problem_args(p)
    _add_common(p)
    p = sub.add_parser("validate", help="check the three requirements without evaluating")
    _add_problem_args(p)
    _add_common(p)
    p = sub.add_parser("loop-check", help="close the series -> dual series -> transform loop")
    _add_problem_args(p)
    _add_common(p)
    p.add_argument("--alphas", default=None, help="comma-separated alpha samples")
    p.add_argument("--x", default="0.5,1,2", help="comma-separated x samples")
    p = sub.add_parser("zeta-identity", help="log-trig integrals vs the alternating Dirichlet sum")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    _add_common(p)
    sub.add_parser("catalog", help="list summand families")
    p = sub.add_parser("variants", help="list kernel variants legal for a series")
    p.add_argument("series")
    p = sub.add_parser("bench", help="cross-validate a fixed corpus; CSV matrix variant x family (PASS/GATED/FAIL)")
    _add_common(p)
    return ap


def _settings(args):
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    qcfg = QuadConfig()
    if "tol" in cfg:
        if not cfg["tol"] > 0:
            raise UsageError("tol must be positive")
        qcfg = QuadConfig(abs_tol=min(cfg["tol"], 1e-12), rel_tol=cfg["tol"])
    talbot_m = cfg.get("talbot_m", E.DEFAULT_M)
    if talbot_m < 8 or talbot_m % 2:
        raise UsageError("talbot_m must be even and at least 8")
    max_terms = cfg.get("max_terms")
    if max_terms is not None and max_terms < 8:
        raise UsageError("max_terms must be at least 8")
    return qcfg, talbot_m, max_terms


def _problem(args):
    spec = parse_series_expr(args.series)
    tag = K.Kernel(args.variant)
    beta, gamma = args.beta, args.gamma
    if tag in K.NEEDS_BETA and beta is None:
        beta = 1.0 if tag in K.COMPLEX_ARGUMENT else 0.5
    if tag in K.NEEDS_GAMMA and gamma is None:
        gamma = 2.0
    return E.SeriesProblem(spec, K.KernelVariant(tag, args.alpha, beta, gamma))


def _emit_warnings(report, err):
    for w in report.warnings:
        diag("WARNING", w, f"{report.label} with {report.variant}", err)


def _cmd_eval(args, out, err):
    qcfg, talbot_m, max_terms = _settings(args)
    p = _problem(args)
    report = E.cross_validate(p, qcfg, method=args.method, talbot_m=talbot_m, max_terms=max_terms)
    print(emit_report(report, args.format), file=out)
    _emit_warnings(report, err)
    if not report.all_checks_pass:
        for c in report.checks:
            if not c:
                diag("ERROR", "requirement-failed", f"{c.name}: {c.diagnostic}", err)
        return EXIT_VALIDATION
    if not report.passed:
        diag("ERROR", "oracle-gap", f"gap {report.oracle_gap} exceeds tolerance", err)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_validate(args, out, err):
    _settings(args)
    p = _problem(args)
    c1, _ = E.check_series(p)
    try:
        it = C.inverse_transform(p.spec)
        c2 = E.RequirementCheck(E.REQUIREMENTS[1], True, "closed-form inverse transform")
        c3 = E._integral_check(p, it)
    except StructuralError:
        c2 = E.RequirementCheck(E.REQUIREMENTS[1], True, "numerical inversion will be attempted")
        c3 = E.RequirementCheck(E.REQUIREMENTS[2], True, "checked at evaluation time")
    checks = (c1, c2, c3)
    if args.format == "json":
        print(json.dumps({"checks": [bool(c) for c in checks],
                          "diagnostics": [c.diagnostic for c in checks]}), file=out)
    else:
        for c in checks:
            print(f"{c.name:26s} {'PASS' if c else 'FAIL'}  {c.diagnostic}", file=out)
    for c in checks:
        if not c:
            diag("ERROR", "requirement-failed", f"{c.name}: {c.diagnostic}", err)
    return EXIT_OK if all(checks) else EXIT_VALIDATION


def _float_list(text):
    try:
        return [parse_complex(t.strip()) for t in text.split(",") if t.strip()]
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _cmd_loop(args, out, err):
    qcfg, _, _ = _settings(args)
    p = _problem(args)
    alphas = _float_list(args.alphas) if args.alphas else [p.variant.alpha]
    xs = [x.real for x in _float_list(args.x)]
    lr = E.loop_check(p, alphas, xs, qcfg)
    rows = [("alpha", "f_integral", "f_loop", "gap", "status")]
    for alpha, fi, fl, gap, ok in lr.rows:
        rows.append((format_complex(alpha), "-" if fi is None else format_complex(fi),
                     "-" if fl is None else format_complex(fl),
                     "-" if gap is None else f"{gap:.3g}", "PASS" if ok else "FAIL"))
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerows(rows)
    elif args.format == "json":
        print(json.dumps({"rows": [dict(zip(rows[0], r)) for r in rows[1:]], "passed": lr.passed}),
              file=out)
    else:
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        for r in rows:
            print(" | ".join(c.ljust(w) for c, w in zip(r, widths)), file=out)
    if not lr.passed:
        diag("ERROR", "loop-not-closed", f"{lr.label} with {lr.variant}", err)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_zeta(args, out, err):
    qcfg, _, _ = _settings(args)
    report = E.zeta_identity_check(args.a, args.b, qcfg)
    print(emit_report(report, args.format), file=out)
    _emit_warnings(report, err)
    if not report.all_checks_pass:
        return EXIT_VALIDATION
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def _cmd_catalog(args, out, err):
    for fam, names in C.catalog_entries():
        spec_args = ",".join(f"{n}=..." for n in names)
        print(f"{fam.value}({spec_args})", file=out)
    return EXIT_OK


def _cmd_variants(args, out, err):
    spec = parse_series_expr(args.series)
    for tag in K.ALL_KERNELS:
        if tag in spec.legal_variants:
            print(tag.value, file=out)
    return EXIT_OK


BENCH_CORPUS = (
    "power(z=3)",
    "shifted_power(a=0.3,beta=2)",
    "exp(c=1)",
    "cos()",
    "sin()",
    "logtrig_sin(a=1,b=1)",
    "logtrig_cos(a=1,b=1)",
)


def run_bench(qcfg=None, talbot_m=E.DEFAULT_M):
    """Status matrix {variant: {series: cell}} over the fixed corpus.

    Cells are PASS (integral agrees with the oracle), GATED (a requirement
    check correctly refuses the combination), FAIL or - (variant not legal).
    """
    matrix = {}
    for expr in BENCH_CORPUS:
        spec = parse_series_expr(expr)
        for tag in K.ALL_KERNELS:
            cell = "-"
            if tag in spec.legal_variants:
                beta = (1.0 if tag in K.COMPLEX_ARGUMENT else 0.5) if tag in K.NEEDS_BETA else None
                gamma = 2.0 if tag in K.NEEDS_GAMMA else None
                try:
                    p = E.SeriesProblem(spec, K.KernelVariant(tag, 1.0, beta, gamma))
                    r = E.cross_validate(p, qcfg, talbot_m=talbot_m)
                    cell = "PASS" if r.passed else "GATED" if not r.all_checks_pass else "FAIL"
                except SeriesError:
                    cell = "FAIL"
            matrix.setdefault(tag.value, {})[expr] = cell
    return matrix


def _cmd_bench(args, out, err):
    qcfg, talbot_m, _ = _settings(args)
    matrix = run_bench(qcfg, talbot_m)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["variant", *BENCH_CORPUS])
    for tag, row in matrix.items():
        w.writerow([tag, *(row[e] for e in BENCH_CORPUS)])
    out.write(buf.getvalue())
    fails = sum(c == "FAIL" for row in matrix.values() for c in row.values())
    if fails:
        diag("WARNING", "bench-failures", f"{fails} cells failed", err)
        return EXIT_NUMERICAL
    return EXIT_OK


COMMANDS = {
    "eval": _cmd_eval,
    "validate": _cmd_validate,
    "loop-check": _cmd_loop,
    "zeta-identity": _cmd_zeta,
    "catalog": _cmd_catalog,
    "variants": _cmd_variants,
    "bench": _cmd_bench,
}


def run(argv=None, out=None, err=None):
    """Run one CLI request; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        diag("ERROR", "usage", exc, err)
        return EXIT_USAGE
    except SeriesError as exc:
        diag("ERROR", exc.code, exc, err)
        return exit_code_for(exc)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
