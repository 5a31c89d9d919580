"""Evaluation paths, requirement gates, cross-validation and the A/B loop.

A series sum_k w(k) g(arg(k)) is evaluated as the integral of the inverse
transform G against the kernel paired with the series shape. Before a value
is reported three requirements are checked: the series converges, G exists
(closed form or numerical inversion), and the integral of G K converges.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
from typing import Optional

import numpy as np

from . import catalog as C
from . import kernels as K
from . import oracles as O
from .errors import (
    AccuracyError,
    ConvergenceError,
    DivergenceError,
    IntegrandError,
    PoleError,
    SeriesError,
    ShapeError,
    StructuralError,
    UnsuitableTransformError,
    ValidationError,
)
from .ilt import DEFAULT_M, ilt_accuracy_probe, talbot_ilt
from .quadrature import QuadConfig, integrate_semiinf, laplace_forward


class Path(str, Enum):
    POINT_MASS = "PointMass"
    QUADRATURE = "Quadrature"
    ILT_QUADRATURE = "IltQuadrature"
    ORACLE_ONLY = "OracleOnly"


class Method(str, Enum):
    AUTO = "auto"
    POINT_MASS = "point_mass"
    QUADRATURE = "quadrature"
    ILT_QUADRATURE = "ilt"


REQUIREMENTS = ("series_converges", "inverse_transform_exists", "integral_converges")


@dataclass
class RequirementCheck:
    name: str
    passed: bool
    diagnostic: str = ""

    def __bool__(self):
        return self.passed


@dataclass
class EvalReport:
    """Outcome of one evaluation.

    ``value`` is the series value. With a failed requirement the path is
    OracleOnly and ``value`` is the oracle's (possibly None); ``passed`` is
    then False.
    """

    value: Optional[complex]
    err_est: float
    path: Path
    checks: tuple
    oracle_value: Optional[complex] = None
    oracle_err: Optional[float] = None
    oracle_gap: Optional[float] = None
    warnings: list = field(default_factory=list)
    passed: bool = True
    label: str = ""
    variant: str = ""
    alpha: complex = 1.0
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.err_est is None or not self.err_est >= 0:
            self.err_est = float("inf") if self.err_est is None else abs(self.err_est)

    @property
    def requirement_checks(self):
        return tuple(c.passed for c in self.checks)

    @property
    def all_checks_pass(self):
        return all(self.requirement_checks)


@dataclass(frozen=True)
class SeriesProblem:
    """A summand paired with a kernel variant (alpha, beta, gamma live on the variant)."""

    spec: C.SummandSpec
    variant: K.KernelVariant

    def __post_init__(self):
        if self.variant.tag not in self.spec.legal_variants:
            raise ValidationError(
                f"{self.variant.tag.value} is not a legal variant for {self.spec!r}",
                [f"{self.variant.tag.value} not legal"])
        C.validate_combination(self.spec, self.variant)

    @property
    def shape(self):
        return K.series_shape(self.variant)

    def with_alpha(self, alpha):
        return SeriesProblem(self.spec, self.variant.with_alpha(alpha))


def problem(spec, tag, alpha=1.0, beta=None, gamma=None):
    return SeriesProblem(spec, K.KernelVariant(tag, alpha, beta, gamma))


# ---------------------------------------------------------------------------
# requirement checks
# ---------------------------------------------------------------------------

def _series_term(p):
    return O._shape_term(p.spec, p.shape)


def check_series(p):
    """Requirement 1: the series converges (oscillating sums pass in the Abel sense
    for oscillator summands, with a warning)."""
    kind = O.classify_series(_series_term(p), p.shape.start)
    if kind == "convergent":
        return RequirementCheck(REQUIREMENTS[0], True, "partial sums settle"), []
    if kind == "oscillating" and C._has_complex_masses(p.spec):
        return (RequirementCheck(REQUIREMENTS[0], True,
                                 "partial sums oscillate boundedly; value holds in the Abel sense"),
                ["abel_sense"])
    return RequirementCheck(REQUIREMENTS[0], False, f"series is {kind}"), []


def _integral_check(p, it):
    q, log_flag = K.smallt_order(p.variant)
    if it.has_density:
        order = it.order
        if not order + q > -1:
            return RequirementCheck(
                REQUIREMENTS[2], False,
                f"G K ~ t^{order + q:g} at t = 0 is not integrable (density order {order:g}, "
                f"kernel order {q:g})")
        rate = K.decay_rate(p.variant) + it.decay
        if not rate > 0:
            return RequirementCheck(REQUIREMENTS[2], False, "G K does not decay as t -> infinity")
    for loc, _ in it.point_masses:
        try:
            K.kernel_eval(p.variant, loc)
        except PoleError as exc:
            return RequirementCheck(REQUIREMENTS[2], False, str(exc))
    return RequirementCheck(REQUIREMENTS[2], True, "integral converges")


# ---------------------------------------------------------------------------
# paths
# ---------------------------------------------------------------------------

def _point_mass_integral(p, it):
    total = 0j
    for loc, w in it.point_masses:
        total += w * complex(K.kernel_eval(p.variant, loc))
    return total, 8 * np.finfo(float).eps * max(abs(total), 1.0)


def _density_integral(p, density, order, decay, cfg):
    q, log_flag = K.smallt_order(p.variant)
    v = p.variant

    def integrand(t):
        with np.errstate(all="ignore"):
            vals = density(t) * K.kernel_eval(v, t, check=False)
        # products like t^p * t^q can underflow to 0 * inf at the first nodes
        bad = ~np.isfinite(vals) & (t < 1e-50)
        return np.where(bad, 0.0, vals)

    scale = K.decay_rate(v) + decay
    return integrate_semiinf(integrand, (order + q, log_flag), cfg, scale=scale)


def _estimate_order(g):
    s1, s2 = 1e3, 1e5
    m1, m2 = abs(complex(g(np.array([s1]))[0])), abs(complex(g(np.array([s2]))[0]))
    if m1 == 0 or m2 == 0:
        raise UnsuitableTransformError("transform vanishes on the probe points")
    return -np.log(m2 / m1) / np.log(s2 / s1) - 1.0


def _ilt_integral(p, cfg, talbot_m):
    spec = p.spec
    g = (lambda s: C.summand_eval(spec, s))
    order = spec.order if spec.order is not None else None
    if order is None:
        order = float(_estimate_order(g))
        if spec.family is not C.Family.CUSTOM:
            it = C.inverse_transform(spec) if spec.family not in C.POINT_MASS_FAMILIES else None
            if it is not None and it.has_density:
                order = it.order

    def density(t):
        return talbot_ilt(g, np.asarray(t, dtype=float).real, talbot_m)

    probe = float(np.max(ilt_accuracy_probe(g, np.array([0.5, 1.0, 2.0]), talbot_m)))
    ilt_cfg = cfg.replace(rel_tol=max(cfg.rel_tol, 1e-8), abs_tol=max(cfg.abs_tol, 1e-10))
    value, err = _density_integral(p, density, order, 0.0, ilt_cfg)
    return value, err + probe, probe


# ---------------------------------------------------------------------------
# oracle selection
# ---------------------------------------------------------------------------

def oracle_sum(spec, shape, max_terms=None):
    """Best available reference sum for the shape: Euler transform for alternating
    weights, Euler-Maclaurin for smooth monotone terms, smoothed partial sums
    otherwise. ``max_terms`` overrides the explicit term count N."""
    if shape.alternating:
        try:
            return O.sum_alternating(spec, shape, N=max_terms or 60)
        except ShapeError:
            pass
    term = O._shape_term(spec, shape)
    kind = O.classify_series(term, shape.start)
    if kind == "divergent":
        raise DivergenceError(f"series of {spec!r} with {shape.variant.tag.value} diverges")
    n = max_terms or 64
    if kind == "convergent" and O._em_applicable(term, n):
        res = O.sum_direct(spec, shape, N=n, tail=O.TailMethod.euler_maclaurin(4))
        if "tail_inapplicable" not in res.warnings:
            return res
    return O.sum_smoothed(spec, shape)


def _attach_oracle(report, p, max_terms=None):
    try:
        res = oracle_sum(p.spec, p.shape, max_terms)
    except SeriesError as exc:
        report.warnings.append(f"oracle_failed:{type(exc).__name__}")
        report.diagnostics["oracle_error"] = str(exc)
        return None
    report.oracle_value = res.value
    report.oracle_err = res.err_est
    report.warnings.extend(f"oracle_{w}" for w in res.warnings)
    if report.value is not None and report.path is not Path.ORACLE_ONLY:
        report.oracle_gap = abs(report.value - res.value)
    return res


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _choose_path(p, method, it):
    if method is Method.AUTO:
        if it is None:
            return Path.ILT_QUADRATURE
        return Path.QUADRATURE if it.has_density else Path.POINT_MASS
    if method is Method.POINT_MASS:
        if it is None or it.has_density:
            raise StructuralError(f"{p.spec!r} has no point-mass inverse transform")
        return Path.POINT_MASS
    if method is Method.QUADRATURE:
        if it is None or not it.has_density:
            raise StructuralError(f"{p.spec!r} has no closed-form density; use the ILT path")
        return Path.QUADRATURE
    return Path.ILT_QUADRATURE


def evaluate_series(p, method=Method.AUTO, cfg=None, *, oracle=False, talbot_m=DEFAULT_M,
                    max_terms=None):
    """Evaluate the series of problem ``p`` through the integral identity.

    Parameters
    ----------
    p : SeriesProblem
    method : Method
        ``AUTO`` uses the catalog density if there is one, point masses if the
        inverse transform is purely distributional, and numerical inversion
        otherwise.
    cfg : QuadConfig
    oracle : bool
        Also compute the reference sum and the gap to it.

    Returns
    -------
    EvalReport
    """
    method = Method(method)
    cfg = QuadConfig() if cfg is None else cfg
    shape = p.shape
    report = EvalReport(None, float("inf"), Path.ORACLE_ONLY, (), label=p.spec.label,
                        variant=p.variant.tag.value, alpha=p.variant.alpha)
    c1, warn = check_series(p)
    report.warnings.extend(warn)

    try:
        it = C.inverse_transform(p.spec)
    except StructuralError:
        it = None
    path = _choose_path(p, method, it)

    integral = err = None
    c2 = RequirementCheck(REQUIREMENTS[1], True, "closed-form inverse transform")
    c3 = RequirementCheck(REQUIREMENTS[2], True, "integral converges")
    if path is Path.ILT_QUADRATURE:
        c2 = RequirementCheck(REQUIREMENTS[1], True, "numerical inverse transform (Talbot)")
        if c1:
            try:
                integral, err, probe = _ilt_integral(p, cfg, talbot_m)
                report.diagnostics["ilt_probe"] = probe
                if probe > 1e-6:
                    report.warnings.append("ilt_accuracy")
            except (UnsuitableTransformError, PoleError) as exc:
                c2 = RequirementCheck(REQUIREMENTS[1], False, str(exc))
            except (ConvergenceError, IntegrandError, AccuracyError) as exc:
                c3 = RequirementCheck(REQUIREMENTS[2], False, str(exc))
    else:
        c3 = _integral_check(p, it)
        if c1 and c3:
            try:
                if path is Path.POINT_MASS:
                    integral, err = _point_mass_integral(p, it)
                else:
                    integral, err = _density_integral(p, it.density, it.order, it.decay, cfg)
                    if it.point_masses:
                        pm, pm_err = _point_mass_integral(p, it)
                        integral, err = integral + pm, err + pm_err
            except (ConvergenceError, IntegrandError) as exc:
                c3 = RequirementCheck(REQUIREMENTS[2], False, str(exc))
            except AccuracyError as exc:
                report.checks = (c1, c2, c3)
                raise AccuracyError(f"{path.value} path: {exc}", exc.value, exc.err_est) from exc

    report.checks = (c1, c2, c3)
    if integral is not None and all(report.requirement_checks):
        report.value = shape.sign * integral
        report.err_est = float(err)
        report.path = path
        report.diagnostics["integral"] = integral
        if oracle:
            _attach_oracle(report, p, max_terms)
        return report

    report.passed = False
    report.warnings.append("requirement_failed")
    _attach_oracle(report, p, max_terms)
    if report.oracle_value is not None:
        report.value = report.oracle_value
        report.err_est = report.oracle_err
    return report


def cross_validate(p, cfg=None, *, method=Method.AUTO, talbot_m=DEFAULT_M, max_terms=None):
    """Integral path and oracle sum side by side.

    PASS iff both exist and gap <= 10 (err_est + oracle err_est).
    """
    try:
        report = evaluate_series(p, method, cfg, oracle=True, talbot_m=talbot_m,
                                 max_terms=max_terms)
    except AccuracyError as exc:
        report = EvalReport(exc.value, exc.err_est or float("inf"), Path.ORACLE_ONLY,
                            tuple(RequirementCheck(n, True) for n in REQUIREMENTS),
                            label=p.spec.label, variant=p.variant.tag.value,
                            alpha=p.variant.alpha, passed=False)
        report.warnings.append("integral_not_converged")
        _attach_oracle(report, p, max_terms)
        return report
    if report.path is Path.ORACLE_ONLY:
        report.passed = False
        return report
    if report.oracle_gap is None:
        report.passed = False
        report.warnings.append("no_oracle")
        return report
    report.passed = report.oracle_gap <= 10 * (report.err_est + report.oracle_err)
    if not report.passed:
        report.warnings.append("oracle_gap_exceeded")
    return report


# ---------------------------------------------------------------------------
# expansion in the shift parameter
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1024)
def _zeta(z):
    # Re z > 1 here, so the probe in sum_direct is skipped
    spec = C.make_summand(C.Family.POWER, z=z)
    term = O._shape_term(spec, K.series_shape(K.KernelVariant(K.Kernel.BASE)))
    return O._direct(term, 1, 16, O.TailMethod.euler_maclaurin(6)).value


def power_series_expand(p, n_max, alpha=None):
    """Coefficients c_0..c_{n_max-1} of sum_k (a + alpha k)^-beta expanded in a.

    c_n = (-1)^n (a/alpha)^n (beta)_n / n! zeta(beta + n) alpha^-beta, with
    zeta values from the Euler-Maclaurin oracle. ``alpha`` defaults to the
    problem's kernel alpha.
    """
    spec = p.spec if isinstance(p, SeriesProblem) else p
    if spec.family is not C.Family.SHIFTED_POWER:
        raise ValidationError("power_series_expand needs a shifted_power summand")
    a, beta = spec["a"], spec["beta"]
    if alpha is None:
        alpha = p.variant.alpha if isinstance(p, SeriesProblem) else 1.0
    alpha = complex(alpha)
    bad = []
    if not abs(a / alpha) < 1:
        bad.append("|a / alpha| < 1")
    if not beta.real > 1:
        bad.append("Re(beta) > 1")
    if bad:
        raise ValidationError("; ".join(f"{b} violated" for b in bad), bad)
    if n_max < 1:
        raise ValidationError("n_max must be positive")
    x = -a / alpha
    coeffs = []
    ratio = 1.0 + 0j  # (beta)_n / n! * x^n
    for n in range(n_max):
        if n:
            ratio *= (beta + n - 1) / n * x
        coeffs.append(ratio * _zeta(beta + n) * alpha ** (-beta) if ratio != 0 else 0j)
    return coeffs


def wynn_epsilon(partial_sums):
    """Wynn epsilon extrapolation of a sequence; returns (value, err_est).

    The even columns give successive limit estimates; the one that moved
    least is returned, with the larger of its two neighbouring changes as
    the error estimate.
    """
    s = np.asarray(partial_sums, dtype=complex)
    n = len(s)
    if n < 3:
        return complex(s[-1]), float("inf") if n < 2 else float(abs(s[-1] - s[-2]))
    prev = np.zeros(n + 1, dtype=complex)
    cur = s
    estimates = [s[-1]]
    for col in range(1, n):
        d = np.diff(cur)
        if np.any(d == 0):
            break
        with np.errstate(all="ignore"):
            nxt = prev[1:len(cur)] + 1.0 / d
        prev, cur = cur, nxt
        if col % 2 == 0:
            if not np.isfinite(cur[-1]):
                break
            estimates.append(cur[-1])
        if len(cur) < 2:
            break
    if len(estimates) < 2:
        return complex(s[-1]), float(abs(s[-1] - s[-2]))
    diffs = np.abs(np.diff(estimates))
    j = int(np.argmin(diffs))
    err = max(diffs[j], diffs[j + 1] if j + 1 < len(diffs) else 0.0)
    err = max(err, 4 * np.finfo(float).eps * abs(estimates[j + 1]))
    return complex(estimates[j + 1]), float(err)


def expansion_sum(coeffs, accelerate=True):
    """Sum of the expansion coefficients: (value, err_est).

    Raw partial sums converge like |a/alpha|^n; ``accelerate`` applies Wynn's
    epsilon algorithm to the same partial sums.
    """
    partial = np.cumsum(np.asarray(coeffs, dtype=complex))
    if not accelerate:
        err = abs(coeffs[-1]) if len(coeffs) else float("inf")
        return complex(partial[-1]), float(err)
    v, e = wynn_epsilon(partial)
    return complex(v), float(e)


# ---------------------------------------------------------------------------
# log-trig zeta identities
# ---------------------------------------------------------------------------

def zeta_identity_check(a, b, cfg=None, tol=1e-7):
    """Integral values of sum (-1)^(k+1) sin(a ln k)/k^(b+1) and its cosine twin
    against the alternating Dirichlet sum D = sum (-1)^(k+1) k^-(b+1+ia).

    sin-part = -Im D, cos-part = Re D and cos - i sin = D. The report's value
    is the combined integral value, ``oracle_value`` is D, ``oracle_gap`` the
    worst of the three gaps.
    """
    a, b = float(a), float(b)
    if a == 0:
        raise ValidationError("log-trig identities need a != 0", ["a != 0"])
    if not b > -1:
        raise ValidationError("log-trig identities need b > -1", ["Re(b + i a + 1) > 0"])
    alt = K.KernelVariant(K.Kernel.ALTERNATING)
    rs = evaluate_series(SeriesProblem(C.make_summand(C.Family.LOGTRIG_SIN, a=a, b=b), alt), cfg=cfg)
    rc = evaluate_series(SeriesProblem(C.make_summand(C.Family.LOGTRIG_COS, a=a, b=b), alt), cfg=cfg)
    dspec = C.make_summand(C.Family.POWER, z=b + 1 + 1j * a)
    D = O.sum_alternating(dspec, K.series_shape(alt), N=60)
    checks = tuple(RequirementCheck(n, rs.checks[i].passed and rc.checks[i].passed)
                   for i, n in enumerate(REQUIREMENTS))
    report = EvalReport(None, float("inf"), Path.ORACLE_ONLY, checks,
                        label=f"logtrig(a={a:g},b={b:g})", variant="alternating")
    report.oracle_value, report.oracle_err = D.value, D.err_est
    if rs.path is Path.ORACLE_ONLY or rc.path is Path.ORACLE_ONLY:
        report.passed = False
        report.warnings.append("requirement_failed")
        return report
    combined = rc.value - 1j * rs.value
    gaps = {
        "sin_part": abs(rs.value - (-D.value.imag)),
        "cos_part": abs(rc.value - D.value.real),
        "combined": abs(combined - D.value),
    }
    report.value = combined
    report.err_est = rs.err_est + rc.err_est
    report.path = rs.path
    report.oracle_gap = max(gaps.values())
    report.diagnostics.update(gaps, sin_value=rs.value, cos_value=rc.value)
    report.passed = report.oracle_gap <= tol
    if not report.passed:
        report.warnings.append("oracle_gap_exceeded")
    return report


# ---------------------------------------------------------------------------
# A <-> B loop
# ---------------------------------------------------------------------------

@dataclass
class LoopReport:
    label: str
    variant: str
    rows: list  # (alpha, f_integral, f_loop, gap, passed)
    F_samples: list  # (x, F(x))
    tol: float

    @property
    def passed(self):
        return all(r[-1] for r in self.rows)


def loop_check(p, alpha_samples=(1.0,), x_samples=(0.5, 1.0, 2.0), cfg=None, tol=1e-6):
    """Close the loop f(alpha) -> F(x) -> Laplace transform of F at alpha.

    f(alpha) is the kernel integral; F is the type-B dual series evaluated on
    demand at the quadrature nodes.
    """
    cfg = QuadConfig() if cfg is None else cfg
    it = None
    try:
        it = C.inverse_transform(p.spec)
    except StructuralError:
        pass
    if it is None or not it.has_density or it.point_masses:
        raise StructuralError(f"{p.spec!r} has no density; the type-B series is distributional")
    bshape = K.typeB_shape(p.variant)
    if not bshape.numeric_evaluable:
        raise StructuralError(
            f"type-B series of variant {p.variant.tag.value} is not numerically evaluable")
    growth = 0.0
    if p.variant.tag in (K.Kernel.ADDED_CONSTANT, K.Kernel.ADDED_CONSTANT_ALTERNATING):
        growth = p.variant.beta.real
    xs = np.asarray(x_samples, dtype=float)
    F_samples = list(zip(xs.tolist(), np.atleast_1d(O.typeB_eval(p.spec, bshape, xs).value)))
    rows = []
    for alpha in alpha_samples:
        q = p.with_alpha(alpha)
        rep = evaluate_series(q, cfg=cfg)
        if rep.path is Path.ORACLE_ONLY:
            rows.append((complex(alpha), rep.value, None, None, False))
            continue
        f_int = rep.diagnostics["integral"]
        bq = K.typeB_shape(q.variant)

        def F(x, bq=bq):
            x = np.asarray(x).real
            return O.typeB_eval(p.spec, bq, x, check=False).value

        f_loop = laplace_forward(F, alpha, cfg, order=it.order, growth=growth)
        gap = abs(f_loop - f_int)
        rows.append((complex(alpha), f_int, f_loop, gap, gap <= tol))
    return LoopReport(p.spec.label, p.variant.tag.value, rows, F_samples, tol)
