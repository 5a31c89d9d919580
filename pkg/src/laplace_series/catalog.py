"""Summand families g(k), their validity ranges and inverse Laplace transforms G(t).

Frequencies and shifts live on the kernel, so every family is defined at unit
frequency: ``cos`` is g(k) = cos(k), with the kernel parameter alpha turning
the series into sum cos(alpha k).
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import kernels as K
from .errors import DomainError, StructuralError, ValidationError
from .gamma import rgamma


class Family(str, Enum):
    POWER = "power"
    SHIFTED_POWER = "shifted_power"
    EXPONENTIAL = "exp"
    COSINE = "cos"
    SINE = "sin"
    LOGTRIG_SIN = "logtrig_sin"
    LOGTRIG_COS = "logtrig_cos"
    MIXTURE = "mixture"
    CUSTOM = "custom"


PARAMETERS = {
    Family.POWER: ("z",),
    Family.SHIFTED_POWER: ("a", "beta"),
    Family.EXPONENTIAL: ("c",),
    Family.COSINE: (),
    Family.SINE: (),
    Family.LOGTRIG_SIN: ("a", "b"),
    Family.LOGTRIG_COS: ("a", "b"),
}

POINT_MASS_FAMILIES = frozenset({Family.EXPONENTIAL, Family.COSINE, Family.SINE})
OSCILLATOR_FAMILIES = frozenset({Family.COSINE, Family.SINE})


@dataclass(frozen=True, eq=False)
class SummandSpec:
    family: Family
    params: dict = field(default_factory=dict)
    legal_variants: frozenset = frozenset()
    components: tuple = ()
    func: Optional[Callable] = None
    order: Optional[float] = None

    def __getitem__(self, name):
        return self.params[name]

    def __repr__(self):
        if self.family is Family.MIXTURE:
            inner = ", ".join(f"{c!r}*{s!r}" for c, s in self.components)
            return f"mixture({inner})"
        args = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.family.value}({args})"

    @property
    def label(self):
        return repr(self)


def _fmt(v):
    v = complex(v)
    if v.imag == 0:
        return repr(v.real) if v.real != int(v.real) else str(int(v.real))
    return f"{v.real!r}{v.imag:+}i"


@dataclass(frozen=True)
class InverseTransform:
    """G(t) = density(t) + sum_j weight_j delta(t - location_j).

    ``order`` is the small-t exponent p of the density (density ~ c t^p);
    ``decay`` the exponential rate in density ~ exp(-decay t) for large t.
    """

    density: Optional[Callable] = None
    order: Optional[float] = None
    point_masses: tuple = ()
    log_factor: bool = False
    decay: float = 0.0

    def __post_init__(self):
        if self.density is None and not self.point_masses:
            raise StructuralError("inverse transform needs a density or point masses")

    @property
    def has_density(self):
        return self.density is not None


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def _family(tag):
    if isinstance(tag, Family):
        return tag
    try:
        return Family(str(tag).lower())
    except ValueError:
        raise ValidationError(f"unknown summand family {tag!r}") from None


def family_violations(family, params):
    p = params
    out = []
    if family is Family.POWER:
        if not p["z"].real > 0:
            out.append("Re(z) > 0")
    elif family is Family.SHIFTED_POWER:
        if not abs(p["a"]) < 1:
            out.append("|a| < 1")
        if not p["beta"].real > 1:
            out.append("Re(beta) > 1")
    elif family is Family.EXPONENTIAL:
        if p["c"].imag != 0 or not p["c"].real > 0:
            out.append("c real and c > 0")
    elif family in (Family.LOGTRIG_SIN, Family.LOGTRIG_COS):
        a, b = p["a"], p["b"]
        if not (b + 1j * a + 1).real > 0:
            out.append("Re(b + i a + 1) > 0")
        if a == 0:
            out.append("a != 0")
        if not abs(a.imag) < 1:
            out.append("|Im(a)| < 1")
    return out


def g0_finite(spec):
    """Whether g(0) = int_0^inf G(t) dt exists (needed by constant-term kernels)."""
    fam = spec.family
    if fam is Family.MIXTURE:
        return all(g0_finite(s) for _, s in spec.components)
    if fam in POINT_MASS_FAMILIES:
        return True
    if fam is Family.SHIFTED_POWER:
        return spec.params["a"].real > 0
    return False


def _structural_violations(spec, tag):
    """Family/kernel conditions that do not depend on alpha, beta, gamma."""
    fam = spec.family
    out = []
    if fam is Family.MIXTURE:
        for _, s in spec.components:
            out.extend(_structural_violations(s, tag))
        return out
    if fam is Family.POWER and tag is K.Kernel.BASE and not spec.params["z"].real > 1:
        out.append("Re(z) > 1 for the base kernel")
    if tag in K.CONSTANT_TERM and not g0_finite(spec):
        out.append(f"{tag.value} needs a finite g(0)")
    if tag in K.COMPLEX_ARGUMENT and fam in OSCILLATOR_FAMILIES:
        out.append("complex-argument kernels need a non-oscillatory summand")
    return out


def make_summand(family, params=None, **kwargs):
    """Validated summand spec.

    >>> make_summand("power", z=2).family
    <Family.POWER: 'power'>
    """
    fam = _family(family)
    if fam in (Family.MIXTURE, Family.CUSTOM):
        raise ValidationError(f"use mixture()/custom_summand() for {fam.value}")
    given = dict(params or {})
    given.update(kwargs)
    expected = PARAMETERS[fam]
    missing = [n for n in expected if n not in given]
    extra = [n for n in given if n not in expected]
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing parameter(s) " + ", ".join(missing))
        if extra:
            parts.append("unknown parameter(s) " + ", ".join(extra))
        raise ValidationError(f"{fam.value}: " + "; ".join(parts), parts)
    values = {n: complex(given[n]) for n in expected}
    bad = family_violations(fam, values)
    if bad:
        raise ValidationError(f"{fam.value}: " + "; ".join(f"{b} violated" for b in bad), bad)
    spec = SummandSpec(fam, values)
    legal = frozenset(t for t in K.ALL_KERNELS if not _structural_violations(spec, t))
    object.__setattr__(spec, "legal_variants", legal)
    return spec


def mixture(*terms):
    """Linear combination sum_j c_j g_j(k) of catalog summands, given as (c_j, spec_j) pairs."""
    if not terms:
        raise ValidationError("mixture needs at least one component")
    comps = tuple((complex(c), s) for c, s in terms)
    legal = frozenset.intersection(*(s.legal_variants for _, s in comps))
    return SummandSpec(Family.MIXTURE, {}, legal, comps)


def custom_summand(func, order=None):
    """Summand known only through its values g(s); inverted numerically.

    ``order`` is the small-t exponent of its inverse transform if known
    (g(s) ~ s^-(order+1) for large s); otherwise it is estimated.
    """
    legal = frozenset(t for t in K.ALL_KERNELS if t not in K.CONSTANT_TERM)
    return SummandSpec(Family.CUSTOM, {}, legal, func=func, order=order)


def combination_violations(spec, v):
    """All stated range conditions for using ``spec`` with kernel ``v``."""
    out = list(_structural_violations(spec, v.tag))
    if _has_complex_masses(spec):
        a = v.alpha
        if a.imag != 0 or not 0 < abs(a.real) < 2 * np.pi:
            out.append("alpha real with 0 < |alpha| < 2 pi for oscillatory summands")
    elif not v.alpha.real > 0:
        out.append("Re(alpha) > 0")
    return out


def validate_combination(spec, v):
    bad = combination_violations(spec, v)
    if bad:
        raise ValidationError(
            f"{spec!r} with {v.tag.value}: " + "; ".join(f"{b} violated" for b in bad), bad)


def _has_complex_masses(spec):
    if spec.family is Family.MIXTURE:
        return any(_has_complex_masses(s) for _, s in spec.components)
    return spec.family in OSCILLATOR_FAMILIES


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _on_cut(x):
    return (x.imag == 0) & (x.real <= 0)


def _cpow(x, e):
    # x**e, falling back to exp(e log x) where complex pow overflows internally
    out = x ** e
    bad = ~np.isfinite(out)
    if np.any(bad):
        out = np.where(bad, np.exp(e * np.log(x)), out)
    return out


def summand_eval(spec, x):
    """g(x) on the principal branch; scalar or array ``x``."""
    x_arr = np.asarray(x, dtype=complex)
    p = spec.params
    fam = spec.family
    with np.errstate(all="ignore"):
        if fam is Family.POWER:
            if np.any(x_arr == 0):
                raise DomainError("power summand has a pole at x = 0")
            out = _cpow(x_arr, -p["z"])
        elif fam is Family.SHIFTED_POWER:
            if np.any(x_arr == -p["a"]):
                raise DomainError(f"shifted power has a pole at x = {-p['a']}")
            out = _cpow(p["a"] + x_arr, -p["beta"])
        elif fam is Family.EXPONENTIAL:
            out = np.exp(-p["c"] * x_arr)
        elif fam is Family.COSINE:
            out = np.cos(x_arr)
        elif fam is Family.SINE:
            out = np.sin(x_arr)
        elif fam in (Family.LOGTRIG_SIN, Family.LOGTRIG_COS):
            if np.any(_on_cut(x_arr)):
                raise DomainError("log-trig summand needs x off the non-positive real axis")
            trig = np.sin if fam is Family.LOGTRIG_SIN else np.cos
            out = trig(p["a"] * np.log(x_arr)) * _cpow(x_arr, -(p["b"] + 1))
        elif fam is Family.MIXTURE:
            out = sum(c * summand_eval(s, x_arr) for c, s in spec.components)
        elif fam is Family.CUSTOM:
            out = spec.func(x_arr)
        else:  # pragma: no cover
            raise ValidationError(f"unhandled family {fam}")
    out = np.asarray(out, dtype=complex)
    return out[()] if out.ndim == 0 else out


def summand_at_zero(spec):
    """g(0) as the integral of G (finite only when g0_finite)."""
    if not g0_finite(spec):
        raise DomainError(f"g(0) is not finite for {spec!r}")
    if spec.family is Family.MIXTURE:
        return sum(c * summand_at_zero(s) for c, s in spec.components)
    return complex(summand_eval(spec, 0.0))


def _power_density(z):
    rg = complex(rgamma(z))
    return lambda t: rg * np.asarray(t, dtype=complex) ** (z - 1)


def inverse_transform(spec):
    """Closed-form G(t) for a catalog summand."""
    fam = spec.family
    p = spec.params
    if fam is Family.POWER:
        z = p["z"]
        return InverseTransform(_power_density(z), z.real - 1)
    if fam is Family.SHIFTED_POWER:
        a, beta = p["a"], p["beta"]
        base = _power_density(beta)

        def density(t):
            t = np.asarray(t, dtype=complex)
            return base(t) * np.exp(-a * t)
        return InverseTransform(density, beta.real - 1, decay=a.real)
    if fam is Family.EXPONENTIAL:
        return InverseTransform(point_masses=((p["c"], 1.0 + 0j),))
    if fam is Family.COSINE:
        return InverseTransform(point_masses=((1j, 0.5 + 0j), (-1j, 0.5 + 0j)))
    if fam is Family.SINE:
        # G = (delta(t + i) - delta(t - i)) / 2i
        return InverseTransform(point_masses=((-1j, 1 / 2j), (1j, -1 / 2j)))
    if fam in (Family.LOGTRIG_SIN, Family.LOGTRIG_COS):
        a, b = p["a"], p["b"]
        e_minus, e_plus = b - 1j * a, b + 1j * a
        r_minus, r_plus = complex(rgamma(e_minus + 1)), complex(rgamma(e_plus + 1))
        if fam is Family.LOGTRIG_SIN:
            c_minus, c_plus = 1 / 2j, -1 / 2j
        else:
            c_minus, c_plus = 0.5, 0.5

        def density(t):
            t = np.asarray(t, dtype=complex)
            return c_minus * r_minus * t ** e_minus + c_plus * r_plus * t ** e_plus
        return InverseTransform(density, min(e_minus.real, e_plus.real))
    if fam is Family.MIXTURE:
        parts = [(c, inverse_transform(s)) for c, s in spec.components]
        dens = [(c, it.density) for c, it in parts if it.has_density]
        masses = tuple((loc, c * w) for c, it in parts for loc, w in it.point_masses)
        density = None
        order = None
        decay = 0.0
        if dens:
            def density(t):
                return sum(c * d(t) for c, d in dens)
            order = min(it.order for _, it in parts if it.has_density)
            decay = min(it.decay for _, it in parts if it.has_density)
        return InverseTransform(density, order, masses, decay=decay)
    if fam is Family.CUSTOM:
        raise StructuralError("custom summands have no closed-form inverse transform")
    raise ValidationError(f"unhandled family {fam}")  # pragma: no cover


def density_eval(it, t):
    """Value of the smooth part of G at ``t``."""
    if not it.has_density:
        raise StructuralError("inverse transform has no density (point masses only)")
    t_arr = np.asarray(t, dtype=complex)
    if it.order is not None and it.order < 0 and np.any(t_arr == 0):
        raise DomainError("density is singular at t = 0")
    with np.errstate(all="ignore"):
        out = np.asarray(it.density(t_arr), dtype=complex)
    return out[()] if out.ndim == 0 else out


def catalog_entries():
    """(family, parameter names, legal-variant rule) rows for listing."""
    return [(f, PARAMETERS[f]) for f in PARAMETERS]
