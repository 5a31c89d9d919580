"""Semi-infinite double-exponential quadrature.

(0, split] is handled by a tanh-sinh rule, whose node clustering absorbs
algebraic and logarithmic endpoint singularities t^q (ln t)^m with q > -1.
[split, inf) uses the exponential DE map t = split + exp(u - exp(-u)),
suited to integrands that decay like exp(-c t). Both panels are refined by
halving the step in lockstep, reusing earlier nodes.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import AccuracyError, ConvergenceError, IntegrandError, ValidationError

_EPS = np.finfo(float).eps
_H0 = 0.5
_MIN_LEVEL = 3
# rate * x beyond which the integrand is below 1e-150 of its scale
_FAR_TAIL = 345.0


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    split_point: float = 1.0
    max_level: int = 12
    tail_cut: float = 720.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValidationError("quadrature tolerances must be positive")
        if not self.split_point > 0:
            raise ValidationError("split_point must be positive")
        if self.max_level < 3:
            raise ValidationError("max_level must be at least 3")

    def replace(self, **changes):
        return replace(self, **changes)


DEFAULT_CONFIG = QuadConfig()


class _Panel:
    """Nodes and weights of one DE panel, generated level by level."""

    def __init__(self, lo, hi, transform):
        self.lo, self.hi, self.transform = lo, hi, transform

    def level_nodes(self, level):
        h = _H0 / 2 ** level
        k_lo = int(np.ceil(self.lo / h))
        k_hi = int(np.floor(self.hi / h))
        k = np.arange(k_lo, k_hi + 1)
        if level > 0:
            k = k[k % 2 != 0]
        return self.transform(k * h)


def _tanh_sinh(a, b):
    # t = a + (b - a) / (1 + exp(-pi sinh u)); left end at a resolved relative to a
    width = b - a

    def transform(u):
        v = np.pi * np.sinh(u)
        s = np.exp(-np.abs(v))
        frac = np.where(v >= 0, 1.0 / (1.0 + s), s / (1.0 + s))
        t = a + width * frac
        w = width * np.pi * np.cosh(u) * s / (1.0 + s) ** 2
        return t, w
    # pi sinh(u) = -345 puts the first node about 1e-150 * width above a
    return _Panel(-5.39, 3.5, transform)


def _exp_de(a, t_max):
    def transform(u):
        e = np.exp(u - np.exp(-u))
        return a + e, e * (1.0 + np.exp(-u))
    hi = np.log(max(t_max - a, 1.0)) + 0.5
    return _Panel(-3.7, hi, transform)


def _check_singularity(sing):
    q, log_flag = sing
    if not q > -1:
        raise ConvergenceError(
            f"integrand ~ t^{q}{' ln t' if log_flag else ''} is not integrable at t = 0 (needs order > -1)")


def _evaluate(f, t, w, t_cut):
    # f may be vector valued: f(t) of shape t.shape + batch
    live = t <= t_cut
    vals = None
    if np.any(live):
        with np.errstate(all="ignore"):
            fv = np.asarray(f(t[live]), dtype=complex)
        if fv.ndim == 0:
            fv = np.broadcast_to(fv, t[live].shape)
        bad = ~np.isfinite(fv)
        if np.any(bad):
            node = float(t[live][np.nonzero(bad)[0][0]])
            raise IntegrandError(f"integrand is not finite at t = {node!r}", node=node)
        vals = np.zeros(t.shape + fv.shape[1:], dtype=complex)
        vals[live] = fv
    if vals is None:
        return 0j, 0.0
    wv = w.reshape(w.shape + (1,) * (vals.ndim - 1)) * vals
    return wv.sum(axis=0), np.abs(wv).sum(axis=0)


def _integrate_panels(f, panels, cfg, t_cut, full_output):
    sums = [0j] * len(panels)
    l1 = [0.0] * len(panels)
    prev = None
    history = []
    value = err = None
    for level in range(cfg.max_level + 1):
        h = _H0 / 2 ** level
        for i, panel in enumerate(panels):
            t, w = panel.level_nodes(level)
            s, a = _evaluate(f, t, w, t_cut)
            sums[i] = sums[i] + s
            l1[i] = l1[i] + a
        parts = [h * s for s in sums]
        value = sum(parts)
        floor = 16 * _EPS * h * sum(l1)
        if prev is not None:
            err = np.maximum(sum(np.abs(p - q) for p, q in zip(parts, prev)), floor)
            history.append(float(np.max(err)))
            tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(value))
            if level >= _MIN_LEVEL and np.all(err <= tol):
                value, err = _unwrap(value), _unwrap(err, float)
                if full_output:
                    return value, err, {"levels": level, "history": history}
                return value, err
        prev = parts
    value, err = _unwrap(value), _unwrap(err, float)
    raise AccuracyError(
        f"quadrature did not converge after {cfg.max_level} levels (err ~ {np.max(err):.3g})",
        value=value, err_est=err)


def _unwrap(x, kind=complex):
    x = np.asarray(x)
    return kind(x) if x.ndim == 0 else x.astype(kind)


def integrate_semiinf(f, sing=(0.0, False), cfg=DEFAULT_CONFIG, *, scale=1.0, full_output=False):
    """Integrate ``f`` over (0, inf).

    Parameters
    ----------
    f : callable
        Vectorised integrand t -> complex array of shape t.shape, or
        t.shape + batch for a batch of integrands sharing the nodes.
    sing : (q, log_flag)
        Declared small-t behaviour f ~ t^q (ln t)^log_flag; must have q > -1.
    cfg : QuadConfig
    scale : float
        Exponential decay rate of f; nodes with scale * t > cfg.tail_cut are
        treated as exact zeros.
    full_output : bool
        Also return a dict with the per-level error history.

    Returns
    -------
    (value, err_est) or (value, err_est, info)
    """
    _check_singularity(sing)
    if not scale > 0:
        raise ConvergenceError("integrand must decay exponentially at infinity (scale > 0)")
    a = cfg.split_point
    t_cut = cfg.tail_cut / scale
    panels = [_tanh_sinh(0.0, a)]
    if t_cut > a:
        panels.append(_exp_de(a, t_cut))
    return _integrate_panels(f, panels, cfg, t_cut, full_output)


def integrate_interval(f, a, b, cfg=DEFAULT_CONFIG):
    """tanh-sinh integral over (a, b] with a possibly singular (integrable) end at a."""
    return _integrate_panels(f, [_tanh_sinh(a, b)], cfg, np.inf, False)


def laplace_forward(F, alpha, cfg=DEFAULT_CONFIG, *, order=0.0, log_flag=False, growth=0.0):
    """int_0^inf exp(-alpha x) F(x) dx.

    ``order`` is the small-x exponent of F; ``growth`` an exponential growth
    rate of F that eats into Re(alpha).
    """
    alpha = complex(alpha)
    rate = alpha.real - growth
    if not rate > 0:
        raise ConvergenceError(f"Re(alpha) = {alpha.real} does not dominate the growth of F")

    def integrand(x):
        x = np.asarray(x, dtype=complex)
        with np.errstate(all="ignore"):
            out = np.asarray(np.exp(-alpha * x) * F(x), dtype=complex)
        # e^{-alpha x} underflows before a growing F overflows; the product is negligible there
        return np.where(~np.isfinite(out) & (rate * x.real > _FAR_TAIL), 0, out)

    value, _ = integrate_semiinf(integrand, (order, log_flag), cfg, scale=rate)
    return value


def integrate_semiinf_err(f, sing=(0.0, False), cfg=DEFAULT_CONFIG, *, scale=1.0):
    """Like integrate_semiinf but never raises AccuracyError: returns (value, err, converged)."""
    try:
        v, e = integrate_semiinf(f, sing, cfg, scale=scale)
        return v, e, True
    except AccuracyError as exc:
        return exc.value, exc.err_est, False
