"""Reference evaluation of series without any integral transform.

These routines sum the series side of a kernel identity term by term and are
used as independent oracles for the integral paths:

* ``sum_direct``: partial sum plus an Euler-Maclaurin or integral-bound tail.
* ``sum_alternating``: Euler transform of the alternating tail.
* ``sum_smoothed``: smoothed (bump-window) average of partial sums, for
  oscillatory series whose partial sums do not settle.
* ``weighted_partial_summation``: sum g(k) f(k) for polynomial g through the
  negapolylog generating functions.
* ``typeB_eval``: the dual series F(x) built from the inverse transform.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import catalog as C
from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    IntegrandError,
    AccuracyError,
    ShapeError,
    StructuralError,
    ValidationError,
)
from .quadrature import QuadConfig, integrate_interval, integrate_semiinf

BERNOULLI = {
    2: 1 / 6,
    4: -1 / 30,
    6: 1 / 42,
    8: -1 / 30,
    10: 5 / 66,
    12: -691 / 2730,
    14: 7 / 6,
}

_STENCIL_HALF = 8
_PROBE_LEVELS = 16
_SPREAD_RATIO = 2.0 ** -0.005
# four-block decay of the absolute block mass for terms ~ k^-1.05
_SLOW_MASS = 2.0 ** -0.2
_TAIL_CFG = QuadConfig(abs_tol=1e-16, rel_tol=1e-13, max_level=10)
_EPS = np.finfo(float).eps
# below this the integrable endpoint region contributes nothing measurable,
# but products like t^p * t^-q can hit 0 * inf
_UNDERFLOW_CUT = 1e-50


def _guard_small(vals, t):
    bad = ~np.isfinite(vals)
    if np.any(bad):
        near = (t < _UNDERFLOW_CUT).reshape(t.shape + (1,) * (vals.ndim - t.ndim))
        vals = np.where(bad & near, 0.0, vals)
    return vals


class TailKind(str, Enum):
    NONE = "none"
    INTEGRAL_BOUND = "integral_bound"
    EULER_MACLAURIN = "euler_maclaurin"


@dataclass(frozen=True)
class TailMethod:
    """How the omitted terms k > N are estimated.

    ``order`` is the number n of Bernoulli corrections for Euler-Maclaurin
    (terms B_2 ... B_2n, 1 <= n <= 6).
    """

    kind: TailKind = TailKind.NONE
    order: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", TailKind(self.kind))
        if self.kind is TailKind.EULER_MACLAURIN and not 1 <= self.order <= 6:
            raise ValidationError("Euler-Maclaurin order must satisfy 1 <= n <= 6 (B_2 ... B_12)")

    @classmethod
    def none(cls):
        return cls(TailKind.NONE)

    @classmethod
    def integral_bound(cls):
        return cls(TailKind.INTEGRAL_BOUND)

    @classmethod
    def euler_maclaurin(cls, order=4):
        return cls(TailKind.EULER_MACLAURIN, order)

    def __str__(self):
        if self.kind is TailKind.EULER_MACLAURIN:
            return f"euler_maclaurin({self.order})"
        return self.kind.value


@dataclass
class OracleResult:
    value: complex
    err_est: float
    terms_used: int
    tail_value: complex = 0j
    tail: TailMethod = field(default_factory=TailMethod.none)
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValidationError("an oracle result uses at least one term")


# ---------------------------------------------------------------------------
# divergence probe
# ---------------------------------------------------------------------------

def classify_series(term, start=1, levels=_PROBE_LEVELS):
    """Classify a series from its first 2**levels terms.

    Returns ``"convergent"``, ``"oscillating"`` (bounded partial sums with
    non-decaying terms) or ``"divergent"``. Partial sums are examined over
    dyadic blocks. When the absolute mass per block stops shrinking the terms
    must cancel within each block; otherwise the partial sums either drift
    (divergent) or wander without a limit (oscillating). With decaying terms
    the series is also divergent when the spread of partial sums per block
    stops shrinking over the last two blocks.
    """
    k = np.arange(start, start + 2 ** levels, dtype=float)
    with np.errstate(all="ignore"):
        t = np.asarray(term(k), dtype=complex)
    if not np.all(np.isfinite(t)):
        return "divergent"
    S = np.cumsum(t)
    osc, tmax, mass = [], [], []
    for j in range(4, levels):
        lo, hi = 2 ** j - 1, 2 ** (j + 1) - 1
        seg = S[lo - 1:hi]
        osc.append(np.ptp(seg.real) + np.ptp(seg.imag))
        tmax.append(np.abs(t[lo:hi]).max())
        mass.append(np.abs(t[lo:hi]).sum())
    scale = max(1.0, abs(S[-1]))
    if osc[-1] <= 1e-13 * scale:
        return "convergent"
    # absolute mass per block not shrinking (terms ~ k^-p, p <= 1.05) and no
    # cancellation inside the block: no limit
    slow = max(mass[-4:]) >= _SLOW_MASS * max(mass[-8:-4])
    if slow and max(o / m for o, m in zip(osc[-4:], mass[-4:])) > 0.1:
        seg = S[2 ** (levels - 8) - 2:]
        drift = (np.ptp(seg.real) + np.ptp(seg.imag)) / sum(osc[-8:])
        return "divergent" if drift > 0.9 else "oscillating"
    if tmax[-1] <= 0.9 * tmax[-3]:
        # terms ~ k^-p give block spreads in ratio 2^(1-p); p <= 1 + 1/200 counts as divergent
        if osc[-1] >= _SPREAD_RATIO * osc[-2] and osc[-2] >= _SPREAD_RATIO * osc[-3]:
            return "divergent"
        return "convergent"
    if osc[-1] > 1.5 * osc[-3]:
        return "divergent"
    return "oscillating"


def _require_convergent(term, start, what):
    kind = classify_series(term, start)
    if kind == "divergent":
        raise DivergenceError(f"{what}: partial sums grow without bound", kind="divergent")
    if kind == "oscillating":
        raise DivergenceError(
            f"{what}: terms do not decay and partial sums oscillate", kind="oscillating")


# ---------------------------------------------------------------------------
# Euler-Maclaurin machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stencil(m, half):
    """Exact central-difference weights for the m-th derivative on offsets -half..half."""
    nodes = list(range(-half, half + 1))
    n = len(nodes)
    # Vandermonde system sum_j w_j x_j^i = m! [i == m], solved exactly
    A = [[Fraction(x) ** i for x in nodes] + [Fraction(factorial(m) if i == m else 0)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                fac = A[r][col]
                A[r] = [a - fac * b for a, b in zip(A[r], A[col])]
    return np.array([float(A[i][n]) for i in range(n)])


def _em_applicable(term, N):
    """Smooth, eventually monotone terms: at most one sign change of Re and Im
    over N..N+64 and a non-increasing envelope."""
    k = np.arange(N, N + 65, dtype=float)
    with np.errstate(all="ignore"):
        v = np.asarray(term(k), dtype=complex)
    if not np.all(np.isfinite(v)):
        return False
    for part in (v.real, v.imag):
        s = np.sign(part)
        if np.any(np.sum(s[1:] * s[:-1] < 0, axis=0) > 1):
            return False
    mag = np.abs(v)
    return bool(np.all(mag[33:].max(axis=0) <= mag[:32].max(axis=0)))


def _tail_integral(term, N, cfg=_TAIL_CFG):
    """int_N^inf term(x) dx through x = N/u on (0, 1]."""
    def integrand(u):
        x = N / u
        with np.errstate(all="ignore"):
            vals = np.asarray(term(x), dtype=complex)
            jac = (N / u ** 2).reshape(u.shape + (1,) * (vals.ndim - 1))
            return _guard_small(vals * jac, u)
    try:
        return integrate_interval(integrand, 0.0, 1.0, cfg)
    except AccuracyError as exc:
        return exc.value, exc.err_est


def _derivatives(term, N, orders):
    h = 1e-2 * N
    offs = np.arange(-_STENCIL_HALF, _STENCIL_HALF + 1)
    vals = np.asarray(term(N + h * offs), dtype=complex)
    out = {}
    for m in orders:
        w = _stencil(m, _STENCIL_HALF)
        out[m] = np.tensordot(w, vals, axes=(0, 0)) / h ** m
    return out


def _tail_estimate(term, N, tail):
    """(tail_value, err_est, tail_used, warnings) for sum_{k > N} term(k)."""
    warnings = []
    if tail.kind is not TailKind.NONE and not _em_applicable(term, N):
        warnings.append("tail_inapplicable")
        tail = TailMethod.none()
    if tail.kind is not TailKind.NONE:
        try:
            integral, ierr = _tail_integral(term, N)
        except IntegrandError:
            warnings.append("tail_inapplicable")
            tail = TailMethod.none()
    if tail.kind is TailKind.NONE:
        with np.errstate(all="ignore"):
            nxt = np.abs(np.asarray(term(np.array([N + 1.0, N + 2.0])), dtype=complex))
            rho = np.where(nxt[0] > 0, nxt[1] / nxt[0], 0.0)
            err = np.where(rho < 0.95, nxt[0] / (1 - np.minimum(rho, 0.95)), nxt[0] * (N + 1))
        return np.zeros_like(nxt[0], dtype=complex), err, tail, warnings
    if tail.kind is TailKind.INTEGRAL_BOUND:
        first, ferr = integrate_interval(
            lambda x: np.asarray(term(x), dtype=complex), float(N), N + 1.0, _TAIL_CFG)
        # sum_{k>N} lies between int_{N+1}^inf and int_N^inf for monotone terms
        value = integral - first / 2
        return value, np.abs(first) / 2 + ierr + ferr, tail, warnings
    n = tail.order
    orders = [2 * j - 1 for j in range(1, n + 2)]
    d = _derivatives(term, float(N), orders)
    fN = np.asarray(term(np.array([float(N)])), dtype=complex)[0]
    corr = sum(BERNOULLI[2 * j] / factorial(2 * j) * d[2 * j - 1] for j in range(1, n + 1))
    value = integral - fN / 2 - corr
    nxt = abs(BERNOULLI[2 * n + 2] / factorial(2 * n + 2)) * np.abs(d[2 * n + 1])
    return value, nxt + ierr, tail, warnings


def _finish(value, err):
    value = np.asarray(value, dtype=complex)
    err = np.maximum(np.asarray(err, dtype=float), 4 * _EPS * np.abs(value))
    if value.ndim == 0:
        return complex(value), float(err)
    return value, err


def _shape_term(spec, shape):
    # series value sum w(k) g(arg(k)): the shape sign belongs to the integral side
    def g(x):
        return C.summand_eval(spec, x)

    def term(k):
        return shape.sign * shape.terms(g, k)
    return term


def _c0_term(spec, shape):
    return shape.c0 * C.summand_at_zero(spec) if shape.c0 else 0j


# ---------------------------------------------------------------------------
# public oracles
# ---------------------------------------------------------------------------

def sum_direct(spec, shape, N=64, tail=None):
    """Direct partial sum over k = start..N plus a tail estimate.

    Parameters
    ----------
    spec : SummandSpec
    shape : SeriesShape
    N : int
        Last explicitly summed index (N >= 8).
    tail : TailMethod, optional
        Defaults to Euler-Maclaurin with four Bernoulli corrections. When the
        terms are not smooth and monotone past N the tail is dropped and the
        result carries the warning ``tail_inapplicable``.

    Raises
    ------
    DivergenceError
        The probe finds growing (``kind="divergent"``) or oscillating partial sums.
    """
    if N < 8:
        raise ValidationError("sum_direct needs N >= 8")
    tail = TailMethod.euler_maclaurin() if tail is None else tail
    term = _shape_term(spec, shape)
    _require_convergent(term, shape.start, f"series of {spec!r} with {shape.variant.tag.value}")
    return _direct(term, shape.start, N, tail, _c0_term(spec, shape))


def _direct(term, start, N, tail, c0=0j):
    k = np.arange(start, N + 1, dtype=float)
    head = np.asarray(term(k), dtype=complex).sum(axis=0) + c0
    tail_value, err, used, warnings = _tail_estimate(term, N, tail)
    value, err = _finish(head + tail_value, err)
    tv = complex(tail_value) if np.ndim(tail_value) == 0 else tail_value
    return OracleResult(value, err, N - start + 1, tv, used, warnings)


def _check_alternating(term, start):
    k = np.arange(start, start + 6, dtype=float)
    v = np.asarray(term(k), dtype=complex)
    nz = np.abs(v) > 0
    ratio = v[1:] / np.where(nz[:-1], v[:-1], 1)
    ok = nz[:-1] & nz[1:]
    # consecutive terms of an alternating series have a negative ratio for
    # real summands; for complex summands the ratio lies in the left half-plane
    return bool(np.all(ratio.real[ok] < 0))


def _euler(term, start, N):
    d = min(N // 2, 30)
    m = N - d + 1
    head = 0j
    if m > start:
        head = np.asarray(term(np.arange(start, m, dtype=float)), dtype=complex).sum(axis=0)
    k = np.arange(m, m + d, dtype=float)
    sgn = np.cos(np.pi * (k - m))
    sgn = sgn.reshape(sgn.shape + (1,) * (np.ndim(term(k[:1])) - 1))
    diffs = np.asarray(term(k), dtype=complex) * sgn
    total = 0j
    incr = 0j
    for n in range(d):
        incr = (-1) ** n * diffs[0] / 2.0 ** (n + 1)
        total = total + incr
        diffs = np.diff(diffs, axis=0)
    tail = (-1) ** (m - start) * total
    return head + tail, np.abs(incr), tail


def sum_alternating(spec, shape, N=60):
    """Euler-transform acceleration of an alternating series.

    The first N - d terms are summed directly; the remainder is replaced by
    d = min(N/2, 30) terms of the Euler transform built from terms up to N.
    ``err_est`` is the size of the last transformed increment.
    """
    if N < 8:
        raise ValidationError("sum_alternating needs N >= 8")
    term = _shape_term(spec, shape)
    if not shape.alternating or not _check_alternating(term, shape.start):
        raise ShapeError(f"{shape.variant.tag.value} shape does not alternate in sign")
    _require_convergent(term, shape.start, f"series of {spec!r} with {shape.variant.tag.value}")
    value, err, tail = _euler(term, shape.start, N)
    value, err = _finish(value + _c0_term(spec, shape), err)
    return OracleResult(value, err, N - shape.start + 1, complex(tail), TailMethod.none())


def _bump(n):
    x = (np.arange(n) + 0.5) / n
    with np.errstate(divide="ignore", over="ignore"):
        return np.exp(-1.0 / (x * (1.0 - x)))


def _smoothed_mean(S):
    w = _bump(len(S))
    return np.sum(w * S) / np.sum(w)


def sum_smoothed(spec, shape, L=2 ** 14):
    """Smoothed limit of oscillating partial sums.

    Averages the partial sums S_1..S_L with a C-infinity bump window. This
    recovers the Abel/Cesaro value of bounded oscillatory series such as
    sum cos(alpha k), and the ordinary value of slowly convergent ones.
    ``err_est`` compares windows of length L and L/2.
    """
    if L < 64:
        raise ValidationError("sum_smoothed needs L >= 64")
    term = _shape_term(spec, shape)
    kind = classify_series(term, shape.start)
    if kind == "divergent":
        raise DivergenceError(f"series of {spec!r} diverges; no smoothed value", kind="divergent")
    k = np.arange(shape.start, shape.start + L, dtype=float)
    S = np.cumsum(np.asarray(term(k), dtype=complex))
    full = _smoothed_mean(S)
    half = _smoothed_mean(S[: L // 2])
    c0 = _c0_term(spec, shape)
    value, err = _finish(full + c0, abs(full - half))
    warnings = ["smoothed_sum"] if kind == "oscillating" else []
    return OracleResult(value, err, L, 0j, TailMethod.none(), warnings)


@lru_cache(maxsize=None)
def eulerian_numbers(m):
    """Row A(m, 0..m-1) of the Eulerian triangle."""
    row = [1]
    for n in range(2, m + 1):
        prev = row + [0]
        row = [(j + 1) * prev[j] + (n - j) * (prev[j - 1] if j > 0 else 0) for j in range(n)]
    return tuple(row)


def negapolylog(m, t):
    """sum_{k>=1} k^m exp(-k t) for integer 0 <= m <= 8 and t > 0 (vectorised in t)."""
    if int(m) != m or m < 0:
        raise ValidationError("negapolylog order must be a non-negative integer")
    if m > 8:
        raise ValidationError("negapolylog supports orders m <= 8")
    t_arr = np.asarray(t, dtype=float)
    if np.any(~(t_arr > 0)):
        raise DomainError("negapolylog needs t > 0")
    x = np.exp(-t_arr)
    one_minus = -np.expm1(-t_arr)
    if m == 0:
        out = x / one_minus
    else:
        A = eulerian_numbers(int(m))
        num = sum(A[j] * x ** (m - j) for j in range(m))
        out = num / one_minus ** (m + 1)
    return out[()] if out.ndim == 0 else out


def weighted_partial_summation(fspec, gpoly, cfg=None):
    """sum_k g(k) f(k) for polynomial g, as int F(t) sum_j c_j Li_{-j}(e^-t) dt.

    ``gpoly`` holds the ascending coefficients c_0..c_deg (deg <= 8) of g.
    The integrand behaves like t^(p - deg - 1) at 0, where p is the order of
    F, so p - deg > 0 is required.
    """
    cfg = QuadConfig() if cfg is None else cfg
    c = np.trim_zeros(np.asarray(gpoly, dtype=complex), "b")
    if c.size == 0:
        raise ValidationError("polynomial weight is identically zero")
    deg = c.size - 1
    if deg > 8:
        raise ValidationError("polynomial weight degree must be <= 8")
    it = C.inverse_transform(fspec)
    if not it.has_density or it.point_masses:
        raise StructuralError(f"{fspec!r} has no pure density inverse transform")
    p = it.order
    if not p - deg > 0:
        raise ConvergenceError(
            f"integrand ~ t^{p - deg - 1:g} at t = 0 is not integrable (needs p - deg > 0)")

    def integrand(t):
        with np.errstate(all="ignore"):
            inner = sum(c[j] * negapolylog(j, t) for j in range(deg + 1) if c[j] != 0)
            return _guard_small(it.density(t) * inner, t)

    value, err = integrate_semiinf(integrand, (p - deg - 1, False), cfg, scale=1.0 + it.decay)
    return OracleResult(value, err, 1, 0j, TailMethod.none())


def typeB_eval(spec, bshape, x, N=64, tail=None, check=True):
    """Dual series F(x) = prefactor(x) sum_{k>=1} weight(k, x) G(x / scale(k)).

    Vectorised over positive real ``x``; alternating shapes use the Euler
    transform, the others a direct sum with Euler-Maclaurin tail in k.
    ``check=False`` skips the divergence probe (for repeated calls).
    """
    if not bshape.numeric_evaluable:
        raise StructuralError(
            f"type-B series of {bshape.variant.tag.value} is not numerically evaluable")
    it = C.inverse_transform(spec)
    if not it.has_density or it.point_masses:
        raise StructuralError(f"{spec!r} has point masses; G(x/k) is distributional")
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    if np.any(~(x_arr > 0)):
        raise DomainError("type-B series is evaluated at x > 0")
    tail = TailMethod.euler_maclaurin() if tail is None else tail

    def make_term(xs):
        def term(k):
            k = np.asarray(k, dtype=float)[:, None]
            with np.errstate(all="ignore"):
                return bshape.weight(k, xs[None, :]) * it.density(xs[None, :] / bshape.scale(k))
        return term

    probe_x = np.unique(x_arr[[0, -1]]) if check else ()
    for xp in probe_x:
        single = make_term(np.array([xp]))
        _require_convergent(lambda k: single(k)[:, 0], 1, f"type-B series of {spec!r} at x = {xp:g}")
    term = make_term(x_arr)
    if bshape.alternating:
        value, err, tv = _euler(term, 1, N)
        res = OracleResult(value, err, N, tv, TailMethod.none())
    else:
        res = _direct(term, 1, N, tail)
    pref = np.asarray(bshape.prefactor(x_arr), dtype=complex)
    value, err = res.value * pref, res.err_est * np.abs(pref)
    value, err = _finish(value, err)
    if scalar:
        value, err = complex(value[0]), float(err[0])
        res.tail_value = complex(np.atleast_1d(res.tail_value)[0])
    res.value, res.err_est = value, err
    return res
