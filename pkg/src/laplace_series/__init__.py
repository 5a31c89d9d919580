"""Summation of series through inverse Laplace transforms and kernel integrals."""

from .catalog import Family, SummandSpec, custom_summand, inverse_transform, make_summand, mixture
from .engine import (
    EvalReport,
    Method,
    Path,
    SeriesProblem,
    cross_validate,
    evaluate_series,
    expansion_sum,
    loop_check,
    power_series_expand,
    problem,
    zeta_identity_check,
)
from .errors import (
    AccuracyError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    IntegrandError,
    ParseError,
    PoleError,
    SeriesError,
    ShapeError,
    StructuralError,
    UnsuitableTransformError,
    ValidationError,
)
from .estimator import SeriesEvaluator
from .ilt import talbot_ilt
from .kernels import Kernel, KernelVariant, kernel_eval, series_shape, typeB_shape
from .oracles import (
    TailMethod,
    negapolylog,
    sum_alternating,
    sum_direct,
    sum_smoothed,
    typeB_eval,
    weighted_partial_summation,
)
from .parser import parse_series_expr
from .quadrature import QuadConfig, integrate_semiinf, laplace_forward
from .report import emit_report

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ConvergenceError",
    "cross_validate",
    "custom_summand",
    "DivergenceError",
    "DomainError",
    "emit_report",
    "EvalReport",
    "evaluate_series",
    "expansion_sum",
    "Family",
    "IntegrandError",
    "integrate_semiinf",
    "inverse_transform",
    "Kernel",
    "kernel_eval",
    "KernelVariant",
    "laplace_forward",
    "loop_check",
    "make_summand",
    "Method",
    "mixture",
    "negapolylog",
    "parse_series_expr",
    "ParseError",
    "Path",
    "PoleError",
    "power_series_expand",
    "problem",
    "QuadConfig",
    "series_shape",
    "SeriesError",
    "SeriesEvaluator",
    "SeriesProblem",
    "ShapeError",
    "StructuralError",
    "sum_alternating",
    "sum_direct",
    "sum_smoothed",
    "SummandSpec",
    "TailMethod",
    "talbot_ilt",
    "typeB_eval",
    "typeB_shape",
    "UnsuitableTransformError",
    "ValidationError",
    "weighted_partial_summation",
    "zeta_identity_check",
]
