"""Exception types raised across the package."""


class ComplexValidationError(ValueError):
    """A cell complex violates one of its structural invariants."""


class ShapeError(ValueError):
    """Operand dimensions do not agree (or a matrix is not symmetric)."""


class ChainPropertyError(ValueError):
    """B1 @ B2 is not the zero matrix."""


class CandidateLimitError(RuntimeError):
    """Cycle enumeration exceeded the configured candidate budget."""


class DegenerateInputError(ValueError):
    """Input has zero energy where a ratio against it is required."""


class IllPosedSamplingError(ValueError):
    """The sampled rows of a bandlimited basis are rank deficient."""


class GenerationError(RuntimeError):
    """A synthetic complex cannot be generated from the requested spec."""
