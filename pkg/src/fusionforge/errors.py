"""Exception types shared across the package."""


class FusionForgeError(Exception):
    """Base class for all package errors."""


class InvalidArgument(FusionForgeError, ValueError):
    pass


class UndecidableError(FusionForgeError):
    """A sign decision needed more precision than the configured cap."""


class InconsistentTableError(FusionForgeError):
    pass


class ReconstructionError(FusionForgeError):
    """A Verlinde sum did not produce a nonnegative integer.

    ``index`` is the offending ``(i, j, k)`` (0-based) and ``value`` the exact
    value that was obtained.
    """

    def __init__(self, message, index=None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


class UnsupportedError(FusionForgeError):
    pass
