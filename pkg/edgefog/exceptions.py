"""Exception classes for edgefog.

Every error carries a human readable ``message`` and a ``context`` mapping so the
command line front-end can render it as a single structured line.
"""

from typing import Any, Dict, Optional


class EdgeFogError(Exception):
    """Base exception for all edgefog errors"""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = {k: v for k, v in context.items() if v is not None}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "context": self.context,
        }


class InstanceError(EdgeFogError):
    """Raised when a resource graph, job graph or instance is invalid."""


class InstanceParseError(InstanceError):
    """Raised when an instance document cannot be parsed."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        field: Optional[str] = None,
    ):
        super().__init__(message, line=line, column=column, field=field)
        self.line = line
        self.column = column
        self.field = field


class DuplicateIdError(InstanceError):
    """Raised when two devices or two jobs share an id."""

    def __init__(self, field: str, id: int):
        super().__init__(f"Duplicate id {id} in {field}", field=field, id=id)


class InvalidEdgeError(InstanceError):
    """Raised for self-links, repeated pairs and links to unknown ids."""

    def __init__(self, message: str, field: str, a: int, b: int):
        super().__init__(message, field=field, a=a, b=b)
        self.a = a
        self.b = b


class EmptyGraphError(InstanceError):
    """Raised when a graph without devices or without jobs is normalized."""


class UnreachablePairError(InstanceError):
    """Raised when two devices have no connecting path."""

    def __init__(self, a: int, b: int):
        super().__init__(f"No path between devices {a} and {b}", a=a, b=b)
        self.a = a
        self.b = b


class DimensionMismatchError(EdgeFogError):
    """Raised when an assignment or matrix does not fit the instance shape."""


class InvalidAssignmentError(EdgeFogError):
    """Raised when an assignment is not a bijection."""


class ParamInvalidError(EdgeFogError):
    """Raised for invalid generator or sweep parameters."""


class BenchError(EdgeFogError):
    """Raised when an experiment output file cannot be read or resumed."""


class SolverError(EdgeFogError):
    """Raised when a solver result breaks its processing-cost guarantee."""
