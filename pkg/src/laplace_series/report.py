"""Rendering of evaluation reports as table, JSON or CSV text."""

import csv
import io
import json
import math

CSV_HEADER = ("series", "variant", "alpha", "value", "err_est", "path", "oracle_gap")
FORMATS = ("table", "json", "csv")


def _num(x):
    # 17 significant digits round-trip any double
    return format(x, ".17g")


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def format_complex(z):
    """Complex literal as accepted by the expression grammar (real part only when Im = 0)."""
    z = complex(z)
    if z.imag == 0:
        return _num(z.real)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{_num(z.real)}{sign}{_num(abs(z.imag))}i"


def report_dict(report):
    """Machine-readable fields of a report."""
    v = report.value
    return {
        "value_re": None if v is None else float(complex(v).real),
        "value_im": None if v is None else float(complex(v).imag),
        "err_est": _finite_or_none(report.err_est),
        "path": report.path.value,
        "checks": [bool(c) for c in report.requirement_checks],
        "oracle_gap": _finite_or_none(report.oracle_gap),
        "warnings": list(report.warnings),
    }


def _table(report):
    v = "-" if report.value is None else format_complex(report.value)
    err = "-" if report.err_est is None or not math.isfinite(report.err_est) else f"{report.err_est:.3g}"
    gap = "-" if report.oracle_gap is None else f"{report.oracle_gap:.3g}"
    checks = "".join("Y" if c else "N" for c in report.requirement_checks)
    head = ("Value", "±Err", "Path", "Checks", "Gap")
    row = (v, err, report.path.value, checks, gap)
    widths = [max(len(h), len(r)) for h, r in zip(head, row)]
    line = lambda cells: " | ".join(c.ljust(w) for c, w in zip(cells, widths))  # noqa: E731
    out = [line(head), "-+-".join("-" * w for w in widths), line(row)]
    if report.label:
        out.insert(0, f"{report.label} with {report.variant} (alpha = {format_complex(report.alpha)})")
    if report.warnings:
        out.append("warnings: " + ", ".join(report.warnings))
    return "\n".join(out)


def _csv(report):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerow([
        report.label,
        report.variant,
        format_complex(report.alpha),
        "" if report.value is None else format_complex(report.value),
        "" if report.err_est is None else _num(report.err_est),
        report.path.value,
        "" if report.oracle_gap is None else _num(report.oracle_gap),
    ])
    return buf.getvalue().rstrip("\n")


def emit_report(report, fmt="table"):
    """Render ``report`` as ``table``, ``json`` or ``csv`` text."""
    if fmt == "json":
        return json.dumps(report_dict(report))
    if fmt == "csv":
        return _csv(report)
    if fmt == "table":
        return _table(report)
    raise ValueError(f"unknown report format {fmt!r}; choose from {', '.join(FORMATS)}")
