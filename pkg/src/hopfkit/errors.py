class HopfError(Exception):
    """Base class for errors raised by hopfkit."""


class ValidationError(HopfError, ValueError):
    """Input data violates a domain invariant (CLI exit code 2)."""


class NonResonantTermError(ValidationError):
    pass


class TriangularityError(ValidationError):
    pass


class ClosureError(HopfError, RuntimeError):
    """An exact computation left the span of the resonant basis; indicates a bug."""


class ParameterError(HopfError, ValueError):
    """The numeric lcK construction could not find admissible parameters."""
