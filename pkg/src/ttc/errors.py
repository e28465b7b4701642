"""Exception hierarchy shared by every module."""


class TTCError(Exception):
    """Base class for all errors raised by the package."""


class ParameterError(TTCError, ValueError):
    """A numeric argument is outside its allowed range."""


class StructuralError(TTCError, ValueError):
    """Inputs have inconsistent shapes (sizes, indices, references)."""


class FamilyError(TTCError, ValueError):
    """An operation was applied to a graph of an unsupported family."""


class PreconditionError(TTCError, ValueError):
    """The hypotheses of a construction do not hold for the given input."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


class ConstructionBugError(TTCError, AssertionError):
    """A construction produced an output that fails re-verification."""


class ProofGapError(TTCError, RuntimeError):
    """A case analysis reached a state the underlying argument rules out.

    ``trace`` records the branch decisions taken before the failure.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


class SweepLimitError(TTCError, ValueError):
    """An exhaustive sweep was requested over too many labelings."""


class GraphFileError(TTCError, ValueError):
    """Syntax or semantic error in a graph or coloring file."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
