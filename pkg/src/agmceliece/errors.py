"""Exception types shared across the package."""


class AgmcError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(AgmcError):
    """Operands belong to different field descriptions."""


class DimensionError(AgmcError):
    """Matrix/vector/code shapes are incompatible."""


class ParameterError(AgmcError):
    """A parameter guard was violated (curve/scheme/attack ranges)."""


class SquareSaturatedError(ParameterError):
    """Schur square filled the ambient space; parameter recovery impossible."""


class FiltrationError(AgmcError):
    """A filtration solve produced a space of unexpected dimension."""


class DecodeFailureError(AgmcError):
    """The ECP decoder could not produce a valid (codeword, error) split."""


class AttackError(AgmcError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


class InstanceTooLargeError(AgmcError):
    """Exhaustive computation refused by a size guard."""


class FormatError(AgmcError):
    """Malformed serialized artifact."""
