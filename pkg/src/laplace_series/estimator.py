"""scikit-learn style wrapper: a series family fitted once, evaluated over alpha.

The "data" is a one-dimensional array of kernel parameters alpha; fitting
parses and validates the series and kernel once, ``predict`` returns the
series values and ``transform`` the (Re, Im, err_est) feature triple.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import engine as E
from . import kernels as K
from .errors import ValidationError
from .parser import parse_series_expr
from .quadrature import QuadConfig


def check_alphas(X):
    """Flatten ``X`` to a 1-d complex array of finite alphas.

    Accepts scalars, lists and arrays of shape (n,) or (n, 1).
    """
    arr = np.asarray(X)
    if arr.dtype == object:
        raise ValidationError("alpha samples must be numeric")
    arr = arr.astype(complex)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    elif arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValidationError(f"expected a 1-d array of alphas, got shape {np.shape(X)}")
    if arr.size == 0:
        raise ValidationError("no alpha samples given")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("alpha samples must be finite")
    return arr


class SeriesEvaluator(TransformerMixin, BaseEstimator):
    """Evaluate sum_k w(k) g(alpha k) for a fixed summand and kernel variant.

    Parameters
    ----------
    series : str
        Expression such as ``"power(z=2)"``.
    variant : str
        Kernel variant tag, e.g. ``"base"``, ``"alternating"``.
    beta, gamma : complex, optional
        Extra kernel parameters for the variants that need them.
    method : str
        ``"auto"``, ``"point_mass"``, ``"quadrature"`` or ``"ilt"``.
    tol : float
        Relative quadrature tolerance.
    talbot_m : int
        Talbot node count for the ILT path.
    strict : bool
        Raise when a requirement check fails instead of returning NaN.
    """

    def __init__(self, series="power(z=2)", variant="base", beta=None, gamma=None,
                 method="auto", tol=1e-10, talbot_m=32, strict=True):
        self.series = series
        self.variant = variant
        self.beta = beta
        self.gamma = gamma
        self.method = method
        self.tol = tol
        self.talbot_m = talbot_m
        self.strict = strict

    def fit(self, X=None, y=None):
        self.spec_ = parse_series_expr(self.series)
        self.tag_ = K.Kernel(self.variant)
        if self.tag_ not in self.spec_.legal_variants:
            raise ValidationError(f"{self.variant} is not legal for {self.spec_!r}")
        self.method_ = E.Method(self.method)
        self.cfg_ = QuadConfig(abs_tol=min(self.tol, 1e-12), rel_tol=self.tol)
        if X is not None:
            for a in check_alphas(X):
                self._problem(a)
        self.reports_ = []
        return self

    def _problem(self, alpha):
        v = K.KernelVariant(self.tag_, alpha, self.beta, self.gamma)
        return E.SeriesProblem(self.spec_, v)

    def _evaluate(self, X):
        check_is_fitted(self, "spec_")
        reports = []
        for a in check_alphas(X):
            r = E.evaluate_series(self._problem(a), self.method_, self.cfg_, talbot_m=self.talbot_m)
            if self.strict and r.path is E.Path.ORACLE_ONLY:
                failed = [c.name for c in r.checks if not c]
                raise ValidationError(f"requirement(s) failed at alpha = {a}: {', '.join(failed)}",
                                      failed)
            reports.append(r)
        self.reports_ = reports
        return reports

    def predict(self, X):
        """Series values at each alpha (NaN where a requirement fails and strict=False)."""
        reports = self._evaluate(X)
        out = np.array([np.nan if r.path is E.Path.ORACLE_ONLY else r.value for r in reports],
                       dtype=complex)
        return out.real if np.all(out.imag == 0) else out

    def transform(self, X):
        """(n, 3) array of Re value, Im value, err_est."""
        reports = self._evaluate(X)
        rows = []
        for r in reports:
            v = np.nan if r.path is E.Path.ORACLE_ONLY else complex(r.value)
            rows.append((np.real(v), np.imag(v), r.err_est))
        return np.array(rows, dtype=float)
