"""Exception types shared across the package."""


class EntcertError(Exception):
    """Base class for all errors raised by entcert."""


class DimensionError(EntcertError):
    """Invalid or mismatched matrix/vector dimensions."""


class NormalizationError(EntcertError):
    """A state or parameter set fails its normalization invariant."""


class HermiticityError(EntcertError):
    """An operator required to be Hermitian is not, beyond tolerance."""


class TruncationError(EntcertError):
    """Too much state weight falls outside the truncated basis."""


class PowerGuardError(EntcertError):
    """Ladder powers too high for the cutoff; moments would be corrupted."""


class DegenerateStateError(EntcertError):
    """An operation produced the zero vector where a state was required."""


class DslError(EntcertError):
    """Base class for operator-DSL front-end errors."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position  # 0-based offset into the source text


class LexError(DslError):
    """Unexpected character while tokenizing."""


class ParseError(DslError):
    """Token stream does not match the grammar."""
