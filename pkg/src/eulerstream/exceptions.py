class GraphError(ValueError):
    """Raised for malformed graph input or out-of-range queries."""


class GraphFormatError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotEulerianDetected(RuntimeError):
    """The traversal hit a state that cannot occur on an Eulerian graph."""


class InvariantViolation(AssertionError):
    pass
