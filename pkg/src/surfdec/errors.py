"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operators, syndromes or codes of mismatched length were combined."""


class InvalidParameterError(ValueError):
    """A parameter is outside its documented domain."""


class ContractViolationError(RuntimeError):
    """A caller-enforced precondition does not hold."""


class CapacityError(RuntimeError):
    """The requested exact computation is too large to enumerate."""


class UnsatisfiableSyndromeError(RuntimeError):
    """The syndrome lies outside the column space of the parity-check matrix."""


class NumericalError(RuntimeError):
    """A dense linear-algebra step failed to converge."""
