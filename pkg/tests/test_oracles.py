import math

import numpy as np
import pytest

from laplace_series import catalog as C
from laplace_series import kernels as K
from laplace_series import oracles as O
from laplace_series.errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    ShapeError,
    StructuralError,
    ValidationError,
)

ZETA3 = 1.2020569031595942854
ZETA4 = math.pi ** 4 / 90
ETA2 = math.pi ** 2 / 12
LN2 = 0.69314718055994530942


def shape(tag, alpha=1.0, beta=None, gamma=None):
    return K.series_shape(K.KernelVariant(tag, alpha, beta, gamma))


def power(z):
    return C.make_summand("power", z=z)


@pytest.mark.parametrize("z, exact", [(2, math.pi ** 2 / 6), (3, ZETA3), (4, ZETA4)])
def test_euler_maclaurin_zeta(z, exact):
    r = O.sum_direct(power(z), shape("base"), N=10)
    assert abs(r.value - exact) < 1e-11
    assert r.err_est < 1e-10
    assert r.tail.kind is O.TailKind.EULER_MACLAURIN and r.terms_used == 10


@pytest.mark.parametrize("z", [3, 4])
def test_em_agrees_with_long_direct_sum(z):
    short = O.sum_direct(power(z), shape("base"), N=10)
    long = O.sum_direct(power(z), shape("base"), N=100_000, tail=O.TailMethod.none())
    assert abs(short.value - long.value) <= 1e-9


def test_em_short_vs_long_sum_z2():
    # without a tail the N = 1e5 sum of k^-2 is short by ~1e-5; the integral-bound tail closes it
    short = O.sum_direct(power(2), shape("base"), N=10)
    long = O.sum_direct(power(2), shape("base"), N=100_000, tail=O.TailMethod.integral_bound())
    assert abs(short.value - long.value) <= 1e-9


def test_alternating_agrees_with_million_terms():
    k = np.arange(1, 1_000_001, dtype=float)
    direct = np.sum((-1) ** (k + 1) / k ** 2)
    r = O.sum_alternating(power(2), shape("alternating"))
    assert abs(r.value - direct) <= 1e-8


def test_integral_bound_tail_long_sum():
    long = O.sum_direct(power(2), shape("base"), N=100_000, tail=O.TailMethod.integral_bound())
    assert abs(long.value - math.pi ** 2 / 6) < 1e-12
    assert abs(long.value - math.pi ** 2 / 6) <= long.err_est


def test_exponential_geometric_sum():
    r = O.sum_direct(C.make_summand("exp", c=math.log(2)), shape("base"), N=60)
    assert abs(r.value - 1) < 1e-15


def test_tail_method_validation():
    with pytest.raises(ValidationError):
        O.TailMethod.euler_maclaurin(0)
    with pytest.raises(ValidationError):
        O.TailMethod.euler_maclaurin(7)
    with pytest.raises(ValidationError):
        O.sum_direct(power(2), shape("base"), N=4)
    with pytest.raises(ValidationError):
        O.OracleResult(0j, 0.0, 0)


def test_em_tail_dropped_for_oscillating_terms():
    r = O.sum_direct(C.make_summand("sin"), shape("integrated_alternating", 1.0), N=64)
    assert "tail_inapplicable" in r.warnings
    assert r.tail.kind is O.TailKind.NONE


@pytest.mark.parametrize("spec, tag, exact", [
    (power(1), "alternating", LN2),
    (power(2), "alternating", ETA2),
    (C.make_summand("exp", c=1), "alternating", 1 / (math.e + 1)),
])
def test_alternating_examples(spec, tag, exact):
    r = O.sum_alternating(spec, shape(tag), N=24)
    assert abs(r.value - exact) < 1e-11
    assert r.err_est < 1e-10


def test_alternating_agrees_with_averaged_partial_sums():
    k = np.arange(1, 1_000_002, dtype=float)
    S = np.cumsum((-1) ** (k + 1) / k ** 1.5)
    brute = 0.5 * (S[-1] + S[-2])
    r = O.sum_alternating(power(1.5), shape("alternating"))
    assert abs(r.value - brute) < 1e-9


def test_alternating_rejects_non_alternating_shape():
    with pytest.raises(ShapeError):
        O.sum_alternating(power(2), shape("base"))


def test_divergent_series_rejected():
    with pytest.raises(DivergenceError) as info:
        O.sum_direct(power(2), shape("differentiated"))
    assert info.value.kind == "divergent"


@pytest.mark.parametrize("term, kind", [
    (lambda k: k ** -2.0, "convergent"),
    (lambda k: (-1) ** k / k, "convergent"),
    (lambda k: 1 / k, "divergent"),
    (lambda k: k ** -1.1, "convergent"),
    (lambda k: np.cos(np.log(k)) / k ** 1.3, "convergent"),
    (lambda k: np.sin(np.log(k)) / k ** 2, "convergent"),
    (lambda k: 1 / (k * np.log(k + 1) ** 2), "convergent"),
    (lambda k: (-1) ** k / np.sqrt(k), "convergent"),
    (lambda k: k * np.cos(k + 1), "divergent"),
    (lambda k: k / (k + 1) ** 2, "divergent"),
    (lambda k: np.sin(k) / k, "convergent"),
    (lambda k: np.cos(np.log(k)) / k, "oscillating"),
    (lambda k: np.exp(1j * k) / k, "convergent"),
    (lambda k: np.sqrt(k), "divergent"),
    (lambda k: np.cos(k), "oscillating"),
    (lambda k: np.exp(1j * k), "oscillating"),
])
def test_classify_series(term, kind):
    assert O.classify_series(term) == kind


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_smoothed_cosine(alpha):
    r = O.sum_smoothed(C.make_summand("cos"), shape("base", alpha))
    assert abs(r.value + 0.5) < 1e-10
    assert "smoothed_sum" in r.warnings


def test_smoothed_sine_integrated():
    r = O.sum_smoothed(C.make_summand("sin"), shape("integrated", 1.0))
    assert abs(r.value - (math.pi - 1) / 2) < 1e-10


def test_smoothed_rejects_divergent():
    with pytest.raises(DivergenceError):
        O.sum_smoothed(power(2), shape("differentiated"))


def test_eulerian_numbers():
    assert O.eulerian_numbers(4) == (1, 11, 11, 1)
    assert sum(O.eulerian_numbers(6)) == math.factorial(6)


@pytest.mark.parametrize("m", range(0, 9))
@pytest.mark.parametrize("t", [0.1, 1.0, 3.0])
def test_negapolylog_brute_force(m, t):
    k = np.arange(1, 5000, dtype=float)
    brute = np.sum(k ** m * np.exp(-k * t))
    assert abs(O.negapolylog(m, t) - brute) <= 1e-12 * brute


@pytest.mark.parametrize("m", range(1, 9))
def test_negapolylog_derivative_relation(m):
    # Li_{-m}(e^-t) = -d/dt Li_{-(m-1)}(e^-t)
    t, h = 0.7, 1e-4
    fd = -(O.negapolylog(m - 1, t + h) - O.negapolylog(m - 1, t - h)) / (2 * h)
    assert abs(O.negapolylog(m, t) - fd) <= 1e-5 * abs(fd)


def test_negapolylog_small_values():
    assert np.allclose(O.negapolylog(0, math.log(2)), 1)
    assert np.allclose(O.negapolylog(1, math.log(2)), 2)
    assert np.allclose(O.negapolylog(2, math.log(2)), 6)
    with pytest.raises(DomainError):
        O.negapolylog(1, 0.0)
    with pytest.raises(ValidationError):
        O.negapolylog(9, 1.0)


@pytest.mark.parametrize("fz, poly, exact", [
    (3, [0, 1], math.pi ** 2 / 6),
    (4, [0, 0, 1], math.pi ** 2 / 6),
    (4, [1, 1], ZETA4 + ZETA3),
    (5, [0, 0, 0, 1], ZETA4 * 0 + math.pi ** 2 / 6),
])
def test_weighted_partial_summation(fz, poly, exact):
    r = O.weighted_partial_summation(power(fz), poly)
    assert abs(r.value - exact) < 1e-12


def test_weighted_partial_summation_non_integrable():
    with pytest.raises(ConvergenceError):
        O.weighted_partial_summation(power(2), [0, 0, 1])
    with pytest.raises(StructuralError):
        O.weighted_partial_summation(C.make_summand("cos"), [1])


@pytest.mark.parametrize("z, exact", [(2, math.pi ** 2 / 6), (3, ZETA3)])
def test_typeB_base_power(z, exact):
    # F(x) = sum_k G(x/k)/k = x^(z-1) zeta(z) / Gamma(z)
    bs = K.typeB_shape(K.KernelVariant("base"))
    x = np.array([0.5, 1.0, 2.0])
    r = O.typeB_eval(power(z), bs, x)
    assert np.allclose(r.value, x ** (z - 1) * exact / math.gamma(z), rtol=1e-11)
    assert O.typeB_eval(power(z), bs, 1.0).value.__class__ is complex


def test_typeB_scaling_law():
    bs = K.typeB_shape(K.KernelVariant("alternating"))
    f1 = O.typeB_eval(power(2.5), bs, 1.0).value
    f3 = O.typeB_eval(power(2.5), bs, 3.0).value
    assert abs(f3 / f1 - 3 ** 1.5) < 1e-10


def test_typeB_point_masses_rejected():
    bs = K.typeB_shape(K.KernelVariant("base"))
    with pytest.raises(StructuralError):
        O.typeB_eval(C.make_summand("cos"), bs, 1.0)
