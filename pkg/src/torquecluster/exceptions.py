"""Exception hierarchy shared by the library, CLI and service layers."""


class TorqueClusteringError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TorqueClusteringError):
    """Invalid data or arguments supplied by the caller."""


class ParseError(InputError):
    """A file or text body could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StateError(TorqueClusteringError):
    """An operation was invoked in a state that cannot support it."""


class UnsupportedModeError(TorqueClusteringError):
    """The requested metric/linkage/mode combination is not available."""
