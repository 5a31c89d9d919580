"""Kernel library: the 24 kernel forms K(t), their series shapes and type-B duals.

Every kernel satisfies the generating identity

    K(t) = sign * sum_{k >= start} weight(k) * exp(-t * argument(k)) + c0,

so that integrating a transform pair G(t) <-> g(k) against it gives

    int_0^inf G(t) K(t) dt = sign * sum_k weight(k) g(argument(k)) + c0 g(0).

The type-B side is the inverse Laplace transform of the same series taken in
the kernel parameter alpha: F(x) = prefactor(x) * sum_k weight(k, x) G(x / scale(k)).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln

from .errors import PoleError, ValidationError


class Kernel(str, Enum):
    BASE = "base"
    ALTERNATING = "alternating"
    SHIFTED = "shifted"
    SHIFTED_ALTERNATING = "shifted_alternating"
    POWER_FACTOR = "power_factor"
    POWER_FACTOR_ALTERNATING = "power_factor_alternating"
    EXP_FACTOR = "exp_factor"
    EXP_FACTOR_ALTERNATING = "exp_factor_alternating"
    DIFFERENTIATED = "differentiated"
    DIFFERENTIATED_ALTERNATING = "differentiated_alternating"
    INTEGRATED = "integrated"
    INTEGRATED_ALTERNATING = "integrated_alternating"
    ADDED_CONSTANT = "added_constant"
    ADDED_CONSTANT_ALTERNATING = "added_constant_alternating"
    HYP_INV_SINE = "hyp_inv_sine"
    HYP_INV_COSINE = "hyp_inv_cosine"
    HYP_INV_SINE_COMPLEX = "hyp_inv_sine_complex"
    HYP_INV_COSINE_COMPLEX = "hyp_inv_cosine_complex"
    HYP_SINE = "hyp_sine"
    HYP_COSINE = "hyp_cosine"
    SQUARE_ROOT = "square_root"
    SQUARE_ROOT_ALTERNATING = "square_root_alternating"
    EXPONENTIAL = "exponential"
    NEG_EXPONENTIAL = "neg_exponential"


ALL_KERNELS = tuple(Kernel)

NEEDS_BETA = frozenset({
    Kernel.SHIFTED, Kernel.SHIFTED_ALTERNATING,
    Kernel.EXP_FACTOR, Kernel.EXP_FACTOR_ALTERNATING,
    Kernel.ADDED_CONSTANT, Kernel.ADDED_CONSTANT_ALTERNATING,
    Kernel.HYP_INV_SINE_COMPLEX, Kernel.HYP_INV_COSINE_COMPLEX,
})
NEEDS_GAMMA = frozenset({Kernel.POWER_FACTOR, Kernel.POWER_FACTOR_ALTERNATING})
COMPLEX_ARGUMENT = frozenset({Kernel.HYP_INV_SINE_COMPLEX, Kernel.HYP_INV_COSINE_COMPLEX})
# kernels whose series carries the constant term g(0)
CONSTANT_TERM = frozenset({
    Kernel.HYP_COSINE, Kernel.SQUARE_ROOT, Kernel.SQUARE_ROOT_ALTERNATING,
    Kernel.EXPONENTIAL, Kernel.NEG_EXPONENTIAL,
})


def _as_kernel(tag):
    if isinstance(tag, Kernel):
        return tag
    try:
        return Kernel(str(tag).lower().replace("-", "_"))
    except ValueError:
        raise ValidationError(f"unknown kernel variant {tag!r}") from None


@dataclass(frozen=True)
class KernelVariant:
    """One kernel form with its parameter bindings.

    ``alpha`` scales the index; ``beta`` is the shift / exponential factor /
    added constant / real part of the complex argument depending on the tag;
    ``gamma`` is the power-factor base.
    """

    tag: Kernel
    alpha: complex = 1.0
    beta: Optional[complex] = None
    gamma: Optional[complex] = None

    def __post_init__(self):
        tag = _as_kernel(self.tag)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "alpha", complex(self.alpha))
        problems = []
        if tag in NEEDS_BETA:
            if self.beta is None:
                problems.append(f"{tag.value} requires beta")
            else:
                object.__setattr__(self, "beta", complex(self.beta))
        elif self.beta is not None:
            object.__setattr__(self, "beta", complex(self.beta))
        if tag in NEEDS_GAMMA:
            if self.gamma is None:
                problems.append(f"{tag.value} requires gamma")
            else:
                object.__setattr__(self, "gamma", complex(self.gamma))
        if problems:
            raise ValidationError("; ".join(problems), problems)
        problems = variant_violations(self)
        if problems:
            raise ValidationError("; ".join(problems), problems)

    def with_alpha(self, alpha):
        return KernelVariant(self.tag, alpha, self.beta, self.gamma)

    @property
    def omega(self):
        """beta + i*alpha, the effective scale of the complex-argument kernels."""
        return self.beta + 1j * self.alpha

    @property
    def scale(self):
        return self.omega if self.tag in COMPLEX_ARGUMENT else self.alpha


def variant_violations(v):
    """Parameter conditions attached to a kernel form itself."""
    a, b, g = v.alpha, v.beta, v.gamma
    out = []
    if a == 0:
        out.append("alpha != 0")
    if v.tag in NEEDS_GAMMA and not abs(g) > 1:
        out.append("|gamma| > 1")
    if v.tag in (Kernel.EXP_FACTOR, Kernel.EXP_FACTOR_ALTERNATING) and not b.real > 0:
        out.append("Re(beta) > 0")
    if v.tag in (Kernel.ADDED_CONSTANT, Kernel.ADDED_CONSTANT_ALTERNATING):
        if not abs(a) > abs(b):
            out.append("|alpha| > |beta|")
        if not (a - b).real > 0:
            out.append("Re(alpha - beta) > 0")
    if v.tag in COMPLEX_ARGUMENT and not b.real > 0:
        out.append("Re(beta) > 0")
    return out


# ---------------------------------------------------------------------------
# kernel evaluation
# ---------------------------------------------------------------------------

def _kernel_values(v, t):
    tag = v.tag
    s = v.scale
    em = np.exp(-s * t)
    om = -np.expm1(-s * t)  # 1 - exp(-s t), accurate near t = 0
    if tag is Kernel.BASE:
        return em / om
    if tag is Kernel.ALTERNATING:
        return em / (1.0 + em)
    if tag is Kernel.SHIFTED:
        return np.exp(-v.beta * t) * em / om
    if tag is Kernel.SHIFTED_ALTERNATING:
        return np.exp(-v.beta * t) * em / (1.0 + em)
    if tag is Kernel.POWER_FACTOR:
        return em / (v.gamma - em)
    if tag is Kernel.POWER_FACTOR_ALTERNATING:
        return em / (v.gamma + em)
    if tag is Kernel.EXP_FACTOR:
        u = s * t + v.beta
        return np.exp(-u) / -np.expm1(-u)
    if tag is Kernel.EXP_FACTOR_ALTERNATING:
        x = np.exp(-(s * t + v.beta))
        return x / (1.0 + x)
    if tag is Kernel.DIFFERENTIATED:
        return (em / om) ** 2
    if tag is Kernel.DIFFERENTIATED_ALTERNATING:
        return (em / (1.0 + em)) ** 2
    if tag is Kernel.INTEGRATED:
        return np.log(om)
    if tag is Kernel.INTEGRATED_ALTERNATING:
        return np.log1p(em)
    if tag is Kernel.ADDED_CONSTANT:
        return em / -np.expm1((v.beta - s) * t)
    if tag is Kernel.ADDED_CONSTANT_ALTERNATING:
        return em / (1.0 + np.exp((v.beta - s) * t))
    if tag in (Kernel.HYP_INV_SINE, Kernel.HYP_INV_SINE_COMPLEX):
        return em / -np.expm1(-2.0 * s * t)
    if tag in (Kernel.HYP_INV_COSINE, Kernel.HYP_INV_COSINE_COMPLEX):
        return em / (1.0 + em * em)
    if tag is Kernel.HYP_SINE:
        return np.sinh(em)
    if tag is Kernel.HYP_COSINE:
        return np.cosh(em)
    if tag is Kernel.SQUARE_ROOT:
        return 1.0 / np.sqrt(om)
    if tag is Kernel.SQUARE_ROOT_ALTERNATING:
        return 1.0 / np.sqrt(1.0 + em)
    if tag is Kernel.EXPONENTIAL:
        return np.exp(em)
    if tag is Kernel.NEG_EXPONENTIAL:
        return np.exp(-em)
    raise ValidationError(f"unhandled kernel {tag}")  # pragma: no cover


def kernel_eval(v, t, *, check=True):
    """Evaluate K(t) for real or complex ``t`` (scalar or array).

    Raises PoleError when the kernel is not finite at a finite argument.
    With ``check=False`` non-finite values are returned as-is (the quadrature
    does its own node bookkeeping).
    """
    t_arr = np.asarray(t, dtype=complex)
    with np.errstate(all="ignore"):
        out = np.asarray(_kernel_values(v, t_arr), dtype=complex)
    if check:
        bad = ~np.isfinite(out)
        if np.any(bad):
            loc = complex(t_arr[bad].flat[0]) if t_arr.ndim else complex(t_arr)
            raise PoleError(f"{v.tag.value} kernel has a pole at t = {loc}", location=loc)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# series shapes
# ---------------------------------------------------------------------------

def _is_integral(k):
    return np.all(k == np.floor(k))


def double_factorial_ratio(n):
    """(2n-1)!!/(2n)!! with the n = 0 value 1.

    Integer arguments use the upward recurrence w(n) = w(n-1)(2n-1)/(2n);
    non-integer arguments (derivative stencils) use Gamma(n+1/2)/(sqrt(pi) Gamma(n+1)).
    """
    n = np.asarray(n, dtype=float)
    if n.size and _is_integral(n) and n.min() >= 0:
        top = int(n.max())
        j = np.arange(1, top + 1)
        table = np.concatenate(([1.0], np.cumprod((2 * j - 1) / (2 * j))))
        return table[n.astype(int)]
    return np.exp(gammaln(n + 0.5) - gammaln(n + 1.0) - 0.5 * np.log(np.pi))


def inv_factorial(n):
    """1/n! on a float grid (zero once it underflows)."""
    n = np.asarray(n, dtype=float)
    return np.exp(-gammaln(n + 1.0))


def _alt(k, offset=1):
    # (-1)^(k + offset) for real k; exact +-1 on integers
    return np.cos(np.pi * (np.asarray(k, dtype=float) + offset))


@dataclass(frozen=True)
class SeriesShape:
    """Summation side of a kernel identity.

    The series is ``sign * sum_{k >= start} weight(k) g(argument(k)) + c0 g(0)``.
    ``weight`` and ``argument`` accept float arrays so that they can be
    differentiated for Euler-Maclaurin tails.
    """

    variant: KernelVariant
    start: int
    c0: int
    sign: int
    weight: Callable
    argument: Callable
    alternating: bool

    def terms(self, g, k):
        """sign * weight(k) * g(argument(k))."""
        k = np.asarray(k, dtype=float)
        with np.errstate(all="ignore"):
            return self.sign * self.weight(k) * g(self.argument(k))


def series_shape(v):
    """Series shape paired with kernel variant ``v``."""
    tag, a, b, gm = v.tag, v.alpha, v.beta, v.gamma
    one = lambda k: np.ones_like(np.asarray(k, dtype=float), dtype=complex)  # noqa: E731
    lin = lambda k: a * np.asarray(k, dtype=float)  # noqa: E731
    odd = lambda k: a * (2 * np.asarray(k, dtype=float) - 1)  # noqa: E731
    alt = _alt

    table = {
        Kernel.BASE: (1, 0, 1, one, lin, False),
        Kernel.ALTERNATING: (1, 0, 1, alt, lin, True),
        Kernel.SHIFTED: (1, 0, 1, one, lambda k: lin(k) + b, False),
        Kernel.SHIFTED_ALTERNATING: (1, 0, 1, alt, lambda k: lin(k) + b, True),
        Kernel.POWER_FACTOR: (1, 0, 1, lambda k: gm ** (-np.asarray(k, float)), lin, False),
        Kernel.POWER_FACTOR_ALTERNATING:
            (1, 0, 1, lambda k: alt(k) * gm ** (-np.asarray(k, float)), lin, True),
        Kernel.EXP_FACTOR: (1, 0, 1, lambda k: np.exp(-b * np.asarray(k, float)), lin, False),
        Kernel.EXP_FACTOR_ALTERNATING:
            (1, 0, 1, lambda k: alt(k) * np.exp(-b * np.asarray(k, float)), lin, True),
        Kernel.DIFFERENTIATED:
            (1, 0, 1, lambda k: np.asarray(k, float) + 0j, lambda k: a * (np.asarray(k, float) + 1), False),
        Kernel.DIFFERENTIATED_ALTERNATING:
            (1, 0, 1, lambda k: alt(k) * np.asarray(k, float), lambda k: a * (np.asarray(k, float) + 1), True),
        Kernel.INTEGRATED: (1, 0, -1, lambda k: 1.0 / np.asarray(k, float) + 0j, lin, False),
        Kernel.INTEGRATED_ALTERNATING: (1, 0, 1, lambda k: alt(k) / np.asarray(k, float), lin, True),
        Kernel.ADDED_CONSTANT: (1, 0, 1, one, lambda k: lin(k) - b * (np.asarray(k, float) - 1), False),
        Kernel.ADDED_CONSTANT_ALTERNATING:
            (1, 0, 1, alt, lambda k: lin(k) - b * (np.asarray(k, float) - 1), True),
        Kernel.HYP_INV_SINE: (1, 0, 1, one, odd, False),
        Kernel.HYP_INV_COSINE: (1, 0, 1, alt, odd, True),
        Kernel.HYP_INV_SINE_COMPLEX:
            (1, 0, 1, one, lambda k: v.omega * (2 * np.asarray(k, float) - 1), False),
        Kernel.HYP_INV_COSINE_COMPLEX:
            (1, 0, 1, alt, lambda k: v.omega * (2 * np.asarray(k, float) - 1), True),
        Kernel.HYP_SINE:
            (1, 0, 1, lambda k: inv_factorial(2 * np.asarray(k, float) - 1) + 0j, odd, False),
        Kernel.HYP_COSINE:
            (1, 1, 1, lambda k: inv_factorial(2 * np.asarray(k, float)) + 0j,
             lambda k: 2 * a * np.asarray(k, float), False),
        Kernel.SQUARE_ROOT: (1, 1, 1, lambda k: double_factorial_ratio(k) + 0j, lin, False),
        Kernel.SQUARE_ROOT_ALTERNATING:
            (1, 1, 1, lambda k: alt(k, 0) * double_factorial_ratio(k), lin, True),
        Kernel.EXPONENTIAL: (1, 1, 1, lambda k: inv_factorial(k) + 0j, lin, False),
        Kernel.NEG_EXPONENTIAL: (1, 1, 1, lambda k: alt(k, 0) * inv_factorial(k), lin, True),
    }
    start, c0, sign, weight, argument, alternating = table[tag]
    return SeriesShape(v, start, c0, sign, weight, argument, alternating)


# ---------------------------------------------------------------------------
# small-t behaviour and decay
# ---------------------------------------------------------------------------

_SMALLT = {
    Kernel.BASE: (-1.0, False),
    Kernel.SHIFTED: (-1.0, False),
    Kernel.DIFFERENTIATED: (-2.0, False),
    Kernel.INTEGRATED: (0.0, True),
    Kernel.ADDED_CONSTANT: (-1.0, False),
    Kernel.HYP_INV_SINE: (-1.0, False),
    Kernel.HYP_INV_SINE_COMPLEX: (-1.0, False),
    Kernel.SQUARE_ROOT: (-0.5, False),
}


def smallt_order(v):
    """(q, log_flag) with K(t) ~ c t^q (ln t)^log_flag as t -> 0+."""
    return _SMALLT.get(v.tag, (0.0, False))


def decay_rate(v):
    """Exponential decay rate of K(t) as t -> +inf (0 for kernels tending to g(0) weight)."""
    tag = v.tag
    if tag in CONSTANT_TERM:
        return 0.0
    if tag in COMPLEX_ARGUMENT:
        return v.beta.real
    if tag in (Kernel.SHIFTED, Kernel.SHIFTED_ALTERNATING):
        return (v.alpha + v.beta).real
    if tag in (Kernel.DIFFERENTIATED, Kernel.DIFFERENTIATED_ALTERNATING):
        return 2.0 * v.alpha.real
    return v.alpha.real


# ---------------------------------------------------------------------------
# type-B shapes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeBShape:
    """Dual series F(x) = prefactor(x) sum_{k>=1} weight(k, x) G(x / scale(k)) [+ delta_term delta(x) g(0)]."""

    variant: KernelVariant
    weight: Callable
    scale: Callable
    prefactor: Callable
    delta_term: Optional[complex]
    numeric_evaluable: bool
    alternating: bool


def typeB_shape(v):
    tag, b, gm = v.tag, v.beta, v.gamma
    f = lambda k: np.asarray(k, dtype=float)  # noqa: E731
    unit = lambda x: np.ones_like(np.asarray(x, dtype=complex))  # noqa: E731
    ident = lambda k: f(k) + 0j  # noqa: E731
    odd = lambda k: 2 * f(k) - 1 + 0j  # noqa: E731
    alt = _alt
    prefactor = unit
    delta = None

    if tag is Kernel.BASE:
        weight, scale = (lambda k, x: 1.0 / f(k) + 0j), ident
    elif tag is Kernel.ALTERNATING:
        weight, scale = (lambda k, x: alt(k) / f(k)), ident
    elif tag is Kernel.SHIFTED:
        weight, scale = (lambda k, x: np.exp(-b * x / f(k)) / f(k)), ident
    elif tag is Kernel.SHIFTED_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) * np.exp(-b * x / f(k)) / f(k)), ident
    elif tag is Kernel.POWER_FACTOR:
        weight, scale = (lambda k, x: gm ** (-f(k)) / f(k)), ident
    elif tag is Kernel.POWER_FACTOR_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) * gm ** (-f(k)) / f(k)), ident
    elif tag is Kernel.EXP_FACTOR:
        weight, scale = (lambda k, x: np.exp(-b * f(k)) / f(k)), ident
    elif tag is Kernel.EXP_FACTOR_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) * np.exp(-b * f(k)) / f(k)), ident
    elif tag is Kernel.DIFFERENTIATED:
        weight, scale = (lambda k, x: f(k) / (f(k) + 1) + 0j), (lambda k: f(k) + 1 + 0j)
    elif tag is Kernel.DIFFERENTIATED_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) * f(k) / (f(k) + 1)), (lambda k: f(k) + 1 + 0j)
    elif tag is Kernel.INTEGRATED:
        weight, scale = (lambda k, x: -1.0 / f(k) ** 2 + 0j), ident
    elif tag is Kernel.INTEGRATED_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) / f(k) ** 2), ident
    elif tag is Kernel.ADDED_CONSTANT:
        weight, scale = (lambda k, x: np.exp(-b * x / f(k)) / f(k)), ident
        prefactor = lambda x: np.exp(b * np.asarray(x, dtype=complex))  # noqa: E731
    elif tag is Kernel.ADDED_CONSTANT_ALTERNATING:
        weight, scale = (lambda k, x: alt(k) * np.exp(-b * x / f(k)) / f(k)), ident
        prefactor = lambda x: np.exp(b * np.asarray(x, dtype=complex))  # noqa: E731
    elif tag is Kernel.HYP_INV_SINE:
        weight, scale = (lambda k, x: 1.0 / odd(k)), odd
    elif tag is Kernel.HYP_INV_COSINE:
        weight, scale = (lambda k, x: alt(k) / odd(k)), odd
    elif tag is Kernel.HYP_INV_SINE_COMPLEX:
        weight, scale = (lambda k, x: 1.0 / (1j * odd(k))), (lambda k: 1j * odd(k))
        prefactor = lambda x: np.exp(1j * b * np.asarray(x, dtype=complex))  # noqa: E731
    elif tag is Kernel.HYP_INV_COSINE_COMPLEX:
        weight, scale = (lambda k, x: alt(k) / (1j * odd(k))), (lambda k: 1j * odd(k))
        prefactor = lambda x: np.exp(1j * b * np.asarray(x, dtype=complex))  # noqa: E731
    elif tag is Kernel.HYP_SINE:
        weight, scale = (lambda k, x: inv_factorial(2 * f(k) - 1) / (2 * f(k) - 1) + 0j), odd
    elif tag is Kernel.HYP_COSINE:
        weight, scale = (lambda k, x: inv_factorial(2 * f(k)) / (2 * f(k)) + 0j), (lambda k: 2 * f(k) + 0j)
        delta = 1.0
    elif tag is Kernel.SQUARE_ROOT:
        weight, scale = (lambda k, x: double_factorial_ratio(k) / f(k) + 0j), ident
        delta = 1.0
    elif tag is Kernel.SQUARE_ROOT_ALTERNATING:
        weight, scale = (lambda k, x: alt(k, 0) * double_factorial_ratio(k) / f(k)), ident
        delta = 1.0
    elif tag is Kernel.EXPONENTIAL:
        weight, scale = (lambda k, x: inv_factorial(k) / f(k) + 0j), ident
        delta = 1.0
    elif tag is Kernel.NEG_EXPONENTIAL:
        weight, scale = (lambda k, x: alt(k, 0) * inv_factorial(k) / f(k)), ident
        delta = 1.0
    else:  # pragma: no cover
        raise ValidationError(f"unhandled kernel {tag}")

    evaluable = delta is None and tag not in COMPLEX_ARGUMENT
    alternating = series_shape(v).alternating
    return TypeBShape(v, weight, scale, prefactor, delta, evaluable, alternating)
