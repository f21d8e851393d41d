class ValidationError(ValueError):
    """Input violates a documented invariant (shape, trace, positivity, ...)."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


class StateFileError(ValueError):
    """Malformed state file. ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
