import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from laplace_series import catalog as C
from laplace_series import engine as E
from laplace_series import kernels as K
from laplace_series.errors import StructuralError, ValidationError

ZETA2 = math.pi ** 2 / 6
ZETA3 = 1.2020569031595942854
# Hurwitz zeta values from mpmath.zeta(s, q), 30 digits
HURWITZ = {
    (0.3, 2): 1.13425343499661930114006530531,   # zeta(2, 1.3)
    (0.6, 3): 0.351786138942099400830896634567,  # zeta(3, 1.6)
    (0.1, 2): 1.43329915079275865188482284275,   # zeta(2, 1.1)
}
# int_0^inf K(t) G(t) dt for the log-trig pair (mpmath quadosc), split as sin / cos parts
LOGTRIG = {
    (1.0, 1.0): (-0.0982683895700161724669630345711, 0.847689164837413474522639420331),
    (0.5, 0.5): (-0.0640062037148038830443822197902, 0.772527419384185804264709971075),
}


def power(z):
    return C.make_summand("power", z=z)


def sample_variant(tag, alpha=1.0):
    beta = (1.0 if tag in K.COMPLEX_ARGUMENT else 0.5) if tag in K.NEEDS_BETA else None
    gamma = 2.0 if tag in K.NEEDS_GAMMA else None
    return K.KernelVariant(tag, alpha, beta, gamma)


def test_zeta_two_by_quadrature():
    r = E.evaluate_series(E.problem(power(2), "base"))
    assert r.path is E.Path.QUADRATURE and r.passed and r.all_checks_pass
    assert abs(r.value - ZETA2) < 1e-12
    assert r.err_est < 1e-9


@pytest.mark.parametrize("z", [2, 3])
@pytest.mark.parametrize("alpha", [0.5, 2.0, 1 + 0.5j])
def test_alpha_scaling(z, alpha):
    # sum (alpha k)^-z = alpha^-z f(1)
    one = E.evaluate_series(E.problem(power(z), "base")).value
    r = E.evaluate_series(E.problem(power(z), "base", alpha))
    assert abs(r.value - alpha ** -z * one) <= 1e-9 * abs(r.value)


@pytest.mark.parametrize("key", sorted(HURWITZ))
def test_shifted_power_hurwitz(key):
    a, beta = key
    r = E.cross_validate(E.problem(C.make_summand("shifted_power", a=a, beta=beta), "base"))
    assert r.passed
    assert abs(r.value - HURWITZ[key]) < 1e-11


@pytest.mark.parametrize("spec", [power(2.5), C.make_summand("shifted_power", a=0.3, beta=2.5),
                                  C.make_summand("logtrig_cos", a=0.5, b=1.5)], ids=repr)
@pytest.mark.parametrize("tag", ["base", "alternating", "exp_factor"])
def test_quadrature_and_ilt_paths_agree(spec, tag):
    p = E.SeriesProblem(spec, sample_variant(tag))
    q = E.evaluate_series(p, "quadrature")
    i = E.evaluate_series(p, "ilt")
    assert q.path is E.Path.QUADRATURE and i.path is E.Path.ILT_QUADRATURE
    assert abs(q.value - i.value) <= 1e-5


def test_mixture_linearity():
    a, b = power(2), C.make_summand("shifted_power", a=0.5, beta=3)
    m = C.mixture((2.0, a), (-0.5j, b))
    for tag in ("base", "alternating", "differentiated_alternating"):
        va = E.evaluate_series(E.SeriesProblem(a, sample_variant(tag))).value
        vb = E.evaluate_series(E.SeriesProblem(b, sample_variant(tag))).value
        vm = E.evaluate_series(E.SeriesProblem(m, sample_variant(tag))).value
        assert abs(vm - (2 * va - 0.5j * vb)) <= 1e-10


def test_point_mass_mixture():
    m = C.mixture((1, C.make_summand("cos")), (1, power(2)))
    r = E.cross_validate(E.problem(m, "alternating", 1.0))
    # sum (-1)^(k+1) cos k = cos(1)/(1 + cos 1) ... checked against the smoothed oracle
    assert r.passed, r.warnings


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 5.0])
def test_cosine_series_abel_value(alpha):
    r = E.evaluate_series(E.problem(C.make_summand("cos"), "base", alpha))
    assert r.path is E.Path.POINT_MASS
    assert abs(r.value + 0.5) < 1e-12
    assert "abel_sense" in r.warnings


@pytest.mark.parametrize("alpha", [0.5, 1.0, 3.0, -0.5, -1.0])
def test_sine_integrated(alpha):
    r = E.evaluate_series(E.problem(C.make_summand("sin"), "integrated", alpha))
    assert abs(r.value - (math.copysign(math.pi, alpha) - alpha) / 2) < 1e-12


def test_oscillator_alpha_out_of_range():
    with pytest.raises(ValidationError):
        E.problem(C.make_summand("cos"), "base", 7.0)


def test_illegal_variant():
    with pytest.raises(ValidationError):
        E.problem(power(1), "base")
    with pytest.raises(ValidationError):
        E.problem(power(2), "exponential")


def test_divergent_series_gate():
    r = E.cross_validate(E.problem(power(2), "differentiated"))
    assert not r.checks[0] and r.checks[0].name == "series_converges"
    assert r.path is E.Path.ORACLE_ONLY and r.value is None and not r.passed
    assert "requirement_failed" in r.warnings


def test_point_mass_ilt_gate():
    r = E.evaluate_series(E.problem(C.make_summand("cos"), "base"), "ilt")
    assert r.checks[0] and not r.checks[1]
    assert r.path is E.Path.ORACLE_ONLY


def test_non_integrable_gate():
    # differentiated kernel ~ t^-2 against density ~ t^0.5
    r = E.evaluate_series(E.problem(C.make_summand("shifted_power", a=0.5, beta=1.5), "differentiated"))
    assert not r.checks[2] and r.path is E.Path.ORACLE_ONLY


def test_forced_path_structural_errors():
    with pytest.raises(StructuralError):
        E.evaluate_series(E.problem(power(2), "base"), "point_mass")
    with pytest.raises(StructuralError):
        E.evaluate_series(E.problem(C.make_summand("cos"), "base"), "quadrature")


def test_custom_summand_ilt_path():
    spec = C.custom_summand(lambda s: 1 / (s + 0.5) ** 2)
    r = E.cross_validate(E.problem(spec, "base"))
    assert r.path is E.Path.ILT_QUADRATURE and r.passed
    # sum (k + 1/2)^-2 = zeta(2, 3/2) = pi^2/2 - 4
    assert abs(r.value - (math.pi ** 2 / 2 - 4)) < 1e-8


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.floats(1.3, 4.0), st.sampled_from([t for t in K.ALL_KERNELS if t not in K.CONSTANT_TERM]),
       st.floats(0.4, 2.0))
def test_gate_soundness(z, tag, alpha):
    # whenever all three requirements pass, the integral agrees with an independent oracle
    spec = power(z)
    if tag not in spec.legal_variants:
        return
    try:
        v = sample_variant(tag, alpha)
    except ValidationError:
        return
    r = E.cross_validate(E.SeriesProblem(spec, v))
    if r.oracle_gap is None:
        assert not r.passed
    elif r.all_checks_pass and r.path is not E.Path.ORACLE_ONLY:
        assert r.oracle_gap <= 10 * (r.err_est + r.oracle_err) + 1e-12


def test_power_series_expand_coefficients():
    p = E.problem(C.make_summand("shifted_power", a=0, beta=2), "base")
    c = E.power_series_expand(p, 4)
    assert abs(c[0] - ZETA2) < 1e-12
    assert np.all(np.asarray(c[1:]) == 0)


def test_expansion_twenty_terms():
    p = E.problem(C.make_summand("shifted_power", a=0.3, beta=2), "base")
    raw, _ = E.expansion_sum(E.power_series_expand(p, 20), accelerate=False)
    assert abs(raw - HURWITZ[(0.3, 2)]) < 1e-8


@pytest.mark.parametrize("key", sorted(HURWITZ))
def test_expansion_reproduces_hurwitz(key):
    a, beta = key
    p = E.problem(C.make_summand("shifted_power", a=a, beta=beta), "base")
    coeffs = E.power_series_expand(p, 31)
    acc, err = E.expansion_sum(coeffs)
    raw, _ = E.expansion_sum(coeffs, accelerate=False)
    assert abs(acc - HURWITZ[key]) < 1e-12
    # raw remainder after n = 30 is about (beta)_31 / 31! a^31 / (1 - a)
    bound = math.comb(31 + beta - 1, beta - 1) * a ** 31 / (1 - a)
    assert abs(raw - HURWITZ[key]) < bound + 1e-14


def test_expansion_alpha_scaling():
    spec = C.make_summand("shifted_power", a=0.3, beta=2)
    p1 = E.problem(spec, "base", 1.0)
    p2 = E.problem(spec, "base", 2.0)
    # sum (0.3 + 2k)^-2 = 2^-2 zeta(2, 1.15)
    s2, _ = E.expansion_sum(E.power_series_expand(p2, 31))
    direct = E.evaluate_series(p2).value
    assert abs(s2 - direct) < 1e-12
    assert len(E.power_series_expand(p1, 3)) == 3


def test_expansion_validation():
    with pytest.raises(ValidationError):
        E.power_series_expand(E.problem(power(2), "base"), 5)
    with pytest.raises(ValidationError):
        E.power_series_expand(E.problem(C.make_summand("shifted_power", a=0.6, beta=2), "base", 0.5), 5)


def test_wynn_epsilon_accelerates_log2():
    k = np.arange(1, 16)
    partial = np.cumsum((-1.0) ** (k + 1) / k)
    est, err = E.wynn_epsilon(partial)
    assert abs(est - math.log(2)) < 1e-10
    assert abs(partial[-1] - math.log(2)) > 1e-2
    assert err < 1e-8


@pytest.mark.parametrize("key", sorted(LOGTRIG))
def test_zeta_identity(key):
    a, b = key
    r = E.zeta_identity_check(a, b)
    assert r.passed and r.oracle_gap < 1e-10
    sin_ref, cos_ref = LOGTRIG[key]
    assert abs(r.diagnostics["sin_value"] - sin_ref) < 1e-12
    assert abs(r.diagnostics["cos_value"] - cos_ref) < 1e-12
    # the alternating zeta (mpmath.altzeta) at b + 1 + i a
    assert abs(complex(cos_ref, -sin_ref) - r.oracle_value) < 1e-12


def test_zeta_identity_validation():
    with pytest.raises(ValidationError):
        E.zeta_identity_check(0.0, 1.0)
    with pytest.raises(ValidationError):
        E.zeta_identity_check(1.0, -1.0)


@pytest.mark.parametrize("z", [2, 3])
@pytest.mark.parametrize("tag", ["base", "alternating"])
def test_loop_check(z, tag):
    lr = E.loop_check(E.problem(power(z), tag), (1.0, 2.0))
    assert lr.passed
    assert max(row[3] for row in lr.rows) < 1e-9


def test_loop_check_needs_density():
    with pytest.raises(StructuralError):
        E.loop_check(E.problem(C.make_summand("cos"), "base"))


def test_logtrig_alternating_cross_validation():
    r = E.cross_validate(E.problem(C.make_summand("logtrig_sin", a=1, b=1), "alternating"))
    assert r.passed
    assert abs(r.value - LOGTRIG[(1.0, 1.0)][0]) < 1e-12


def test_loop_check_zeta3_at_two():
    lr = E.loop_check(E.problem(power(3), "base"), (2.0,))
    alpha, f_int, f_loop, gap, ok = lr.rows[0]
    assert ok and abs(f_int - ZETA3 / 8) < 1e-12 and abs(f_loop - ZETA3 / 8) < 1e-9


def test_report_invariants():
    r = E.cross_validate(E.problem(power(2), "alternating"))
    assert r.all_checks_pass and r.oracle_gap == abs(r.value - r.oracle_value)
    assert r.err_est >= 0
