"""Exception hierarchy shared by every module."""


class SeriesError(Exception):
    """Base class for all errors raised by the package."""

    code = "series-error"


class ValidationError(SeriesError, ValueError):
    """A parameter or a (summand, kernel) combination is outside its validity range."""

    code = "validation"

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = list(violated or [message])


class DomainError(SeriesError, ValueError):
    """A function was evaluated outside its analyticity domain."""

    code = "domain"


class PoleError(DomainError):
    """A kernel or transform was evaluated at (or numerically on top of) a pole."""

    code = "pole"

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class StructuralError(SeriesError):
    """The requested operation does not apply to this object's structure."""

    code = "structural"


class ShapeError(StructuralError):
    code = "shape"


class UnsuitableTransformError(SeriesError):
    """A Laplace-domain function cannot be inverted numerically."""

    code = "ilt-unsuitable"


class DivergenceError(SeriesError):
    """Partial sums do not settle."""

    code = "divergent"

    def __init__(self, message, kind="divergent"):
        super().__init__(message)
        self.kind = kind


class ConvergenceError(SeriesError):
    """An integral is not integrable (endpoint singularity or missing decay)."""

    code = "non-integrable"


class AccuracyError(SeriesError):
    """Requested accuracy not reached; carries the best estimate."""

    code = "accuracy"

    def __init__(self, message, value=None, err_est=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class IntegrandError(SeriesError):
    """The integrand produced NaN or infinity at a quadrature node."""

    code = "integrand"

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class ParseError(SeriesError):
    """Syntax or vocabulary error in a series expression."""

    code = "syntax"

    def __init__(self, message, offset=None, expected=None):
        super().__init__(message)
        self.offset = offset
        self.expected = list(expected or [])
