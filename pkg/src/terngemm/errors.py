"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument violates a documented precondition (bad dims, bad sparsity, bad config)."""


class CorruptionError(ValueError):
    """A sparse structure is internally inconsistent (overlapping or duplicate entries)."""


class InvalidCodeError(ValueError):
    """A packed ternary byte code is outside the representable range."""


class VerificationError(AssertionError):
    """A kernel output failed the pre-benchmark oracle check."""


class ParseError(ValueError):
    """A serialized matrix file is malformed.

    Carries the byte offset where parsing failed so corrupt files can be
    located with a hex editor.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
