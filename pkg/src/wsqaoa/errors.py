"""Exception types raised across the package."""


class WsQaoaError(Exception):
    """Base class for all package errors."""


class InvalidInputError(WsQaoaError, ValueError):
    pass


class SizeGuardError(WsQaoaError):
    """Raised when an instance is too large for brute force or dense matrices."""


class PreconditionError(WsQaoaError):
    pass


class ParseError(InvalidInputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
