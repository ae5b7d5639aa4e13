"""Exception hierarchy for qgwalk."""


class QGWError(Exception):
    """Base class for all qgwalk errors."""


class GraphSyntaxError(QGWError, ValueError):
    """The graph document is not well-formed JSON or violates the schema."""


class ValidationError(QGWError, ValueError):
    """A graph violates a structural invariant.

    ``locus`` names the offending site, edge or parameter.
    """

    def __init__(self, locus: str, message: str):
        super().__init__(f"{locus}: {message}")
        self.locus = locus


class UnknownParameter(ValidationError):
    pass


class DimensionMismatch(QGWError, ValueError):
    pass


class ConvergenceFailure(QGWError, ArithmeticError):
    pass


class PauliViolation(QGWError, ValueError):
    pass


class DimensionLimit(QGWError, ValueError):
    pass


class EmptySeries(QGWError, ValueError):
    pass


class SweepPointError(QGWError):
    """Wraps a failure at one sweep value; the original error is ``__cause__``."""

    def __init__(self, parameter: str, value: float, cause: Exception):
        super().__init__(f"sweep {parameter}={value!r} failed: {cause}")
        self.parameter = parameter
        self.value = value
