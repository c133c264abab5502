"""Exception hierarchy.  CLI exit codes hang off these classes."""


class ResintError(Exception):
    exit_code = 4


class RingMismatchError(ResintError, ValueError):
    pass


class ZeroPolynomialError(ResintError, ValueError):
    pass


class ResourceLimitError(ResintError):
    """A configured degree or S-pair bound was exceeded."""

    exit_code = 3


class ParseError(ResintError, ValueError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)


class NotGradedError(ResintError, ValueError):
    pass


class HypothesisError(ResintError):
    """A theorem hypothesis required by an operation does not hold."""

    exit_code = 1


class CrossCheckError(ResintError):
    """Two independent computations disagreed."""

    exit_code = 4
