"""Exception hierarchy shared across the package."""


class VoamatError(Exception):
    """Base class for all errors raised by this package."""


class InputError(VoamatError):
    """Malformed or inconsistent input data (bad file, bad table, bad labels)."""


class PreconditionError(InputError):
    """An operation was called with arguments outside its contract."""


class UnsupportedLevelError(PreconditionError):
    """A builder cannot produce the requested level.

    ``reason`` distinguishes levels where the object provably does not
    exist from levels the builder simply does not cover.
    """

    def __init__(self, level: int, reason: str, message: str):
        super().__init__(message)
        self.level = level
        self.reason = reason  # "nonexistent" or "out_of_scope"
