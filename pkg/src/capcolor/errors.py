"""Exception hierarchy shared by every capcolor module."""
from __future__ import annotations


class CapColorError(Exception):
    pass


class GraphError(CapColorError, ValueError):
    pass


class InvalidEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class InvalidVertex(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CountMismatch(ParseError):
    pass


class InvalidParameter(CapColorError, ValueError):
    pass


class BudgetExceeded(CapColorError):
    """A brute-force search ran out of node expansions before finishing."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} expansions exhausted")


class TooLarge(CapColorError, ValueError):
    pass


class PartialColoring(CapColorError, ValueError):
    pass


class SeparatorMismatch(CapColorError, ValueError):
    pass


class ClassViolation(CapColorError):
    """Raised when a peeled layer breaks the triangle-free / 3-color guarantee."""

    def __init__(self, message: str, layer: tuple[int, ...] = ()):
        self.layer = layer
        super().__init__(message)


class NotInClass(CapColorError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class TooLargeForStrict(CapColorError):
    pass
