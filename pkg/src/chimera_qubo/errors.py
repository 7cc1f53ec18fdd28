"""Exception types raised across the package.

Every error derives from :class:`ChimeraQuboError` so callers (and the CLI)
can separate data problems from programming errors with one ``except``.
"""


class ChimeraQuboError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(ChimeraQuboError, ValueError):
    pass


class UnknownNodeError(ChimeraQuboError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown node"


class IncompleteAssignmentError(ChimeraQuboError, ValueError):
    pass


class TooLargeError(ChimeraQuboError, ValueError):
    pass


class KTooLargeError(ChimeraQuboError, ValueError):
    pass


class NonChimeraTopologyError(ChimeraQuboError, ValueError):
    pass


class LpParseError(ChimeraQuboError, ValueError):
    """Raised by :func:`chimera_qubo.lpformat.parse_lp`."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedSectionError(LpParseError):
    pass


class UnknownVariableError(LpParseError):
    pass


class DuplicateBoundError(LpParseError):
    pass


class InstanceParseError(ChimeraQuboError, ValueError):
    """Instance file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonChimeraEdgeError(InstanceParseError):
    pass


class DuplicateEntryError(InstanceParseError):
    pass


class EmptySampleError(ChimeraQuboError, ValueError):
    pass


class NonPositiveSampleError(ChimeraQuboError, ValueError):
    pass
