"""Exception hierarchy shared by every zdeep module."""


class ZDeepError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ZDeepError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ZDeepError):
    """An input exceeds a configured or hard size limit."""


class ParseError(ZDeepError, ValueError):
    """Malformed input text. ``lineno`` is 1-based."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ValidationError(ZDeepError, ValueError):
    """Well-formed input whose content fails a semantic check."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
