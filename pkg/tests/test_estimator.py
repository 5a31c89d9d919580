import math

import numpy as np
import pytest
from sklearn.base import clone

from laplace_series.errors import ValidationError
from laplace_series.estimator import SeriesEvaluator, check_alphas

ZETA3 = 1.2020569031595942854


def test_params_round_trip():
    est = SeriesEvaluator(series="power(z=3)", variant="alternating", tol=1e-9)
    params = est.get_params()
    assert params["series"] == "power(z=3)" and params["tol"] == 1e-9
    twin = clone(est)
    assert twin.get_params() == params and twin is not est


def test_predict_scales_with_alpha():
    alphas = np.array([0.5, 1.0, 2.0])
    est = SeriesEvaluator(series="power(z=3)").fit(alphas)
    y = est.predict(alphas)
    assert y.dtype == float
    assert np.allclose(y, ZETA3 * alphas ** -3, rtol=1e-11)


def test_predict_complex_values():
    est = SeriesEvaluator(series="power(z=2)").fit()
    y = est.predict([1 + 1j])
    assert np.iscomplexobj(y)
    assert abs(y[0] - (1 + 1j) ** -2 * math.pi ** 2 / 6) < 1e-11


def test_transform_columns():
    est = SeriesEvaluator(series="cos()")
    out = est.fit_transform(np.array([[1.0], [2.0]]))
    assert out.shape == (2, 3)
    assert np.allclose(out[:, 0], -0.5) and np.allclose(out[:, 1], 0)
    assert np.all(out[:, 2] >= 0)


def test_strict_and_lenient_requirement_failure():
    strict = SeriesEvaluator(series="power(z=2)", variant="differentiated").fit()
    with pytest.raises(ValidationError):
        strict.predict([1.0])
    lenient = SeriesEvaluator(series="power(z=2)", variant="differentiated", strict=False).fit()
    assert np.isnan(lenient.predict([1.0])[0])


def test_fit_validates():
    with pytest.raises(ValidationError):
        SeriesEvaluator(series="power(z=1)").fit()
    with pytest.raises(ValidationError):
        SeriesEvaluator(series="cos()").fit([7.0])


def test_unfitted_predict():
    from sklearn.exceptions import NotFittedError
    with pytest.raises(NotFittedError):
        SeriesEvaluator().predict([1.0])


@pytest.mark.parametrize("bad", [[], [[1, 2], [3, 4]], [np.inf], np.array(["a"], dtype=object)])
def test_check_alphas_rejects(bad):
    with pytest.raises(ValidationError):
        check_alphas(bad)


def test_check_alphas_shapes():
    assert check_alphas(2.0).shape == (1,)
    assert check_alphas([[1.0], [2.0]]).shape == (2,)
