"""Exception types shared across the toolkit."""


class DegenerateInputError(ValueError):
    """Points are affinely dependent where independence is required.

    Carries the indices of the offending subset so callers can report or
    retry with a reduced set.
    """

    def __init__(self, indices, message=None):
        self.indices = list(int(i) for i in indices)
        super().__init__(message or f"affinely dependent points at indices {self.indices}")


class GuardError(RuntimeError):
    """A desk-scale enumeration or size guard was exceeded."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance within its budget."""

    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class IterationLimitError(RuntimeError):
    """An iteration cap was hit.  ``best`` holds the best solution found."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ParseError(ValueError):
    """An input file could not be parsed; ``line`` is the offending line."""

    def __init__(self, line, message):
        self.line = int(line)
        super().__init__(f"line {line}: {message}")
