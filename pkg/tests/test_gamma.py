import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laplace_series.gamma import gamma, rgamma

POINTS = [0.5, 1.0, 2.5, 7.3, 0.1 + 0.2j, 2 + 3j, -0.5, -2.5 + 0.1j, 1 - 1j, 12.0]


@pytest.mark.parametrize("z", POINTS)
def test_gamma_matches_mpmath(z):
    ref = complex(mpmath.gamma(z))
    assert abs(gamma(z) - ref) <= 1e-13 * abs(ref)


@pytest.mark.parametrize("z", POINTS)
def test_rgamma_is_reciprocal(z):
    ref = complex(mpmath.rgamma(z))
    assert abs(rgamma(z) - ref) <= 1e-13 * max(abs(ref), 1e-300)


def test_rgamma_zero_at_nonpositive_integers():
    assert np.all(rgamma(np.array([0.0, -1.0, -2.0, -5.0])) == 0)


def test_array_input_keeps_shape():
    z = np.linspace(0.5, 4, 6).reshape(2, 3)
    assert gamma(z).shape == (2, 3)
    assert np.allclose(gamma(np.array([1.0, 2.0, 3.0, 4.0])), [1, 1, 2, 6], rtol=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.2, 8), st.floats(-3, 3))
def test_recurrence(x, y):
    z = complex(x, y)
    assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-12 * abs(gamma(z + 1))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(-2, 2))
def test_reflection(x, y):
    z = complex(x, y)
    lhs = gamma(z) * gamma(1 - z)
    rhs = np.pi / np.sin(np.pi * z)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_strip_accuracy_twelve_digits():
    # |Im z| <= 2, 0 < Re z <= 5
    x, y = np.meshgrid(np.linspace(0.05, 5, 12), np.linspace(-2, 2, 9))
    z = (x + 1j * y).ravel()
    ref = np.array([complex(mpmath.gamma(complex(v))) for v in z])
    assert np.max(np.abs(gamma(z) - ref) / np.abs(ref)) < 1e-12
