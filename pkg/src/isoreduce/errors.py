"""Exception hierarchy with the stable error-name / exit-code table.

Every error the library can surface carries a machine-readable ``name``
(used verbatim in service error bodies and CLI diagnostics) and a distinct
process exit code.  The CLI and the HTTP service share this table, so a
remote failure maps to the same exit code as a local one.
"""

from __future__ import annotations


class IsoreduceError(Exception):
    """Base class for all errors raised by this package."""

    name = "InternalError"
    exit_code = 70

    def details(self) -> dict:
        """Structured payload for service error bodies; subclasses extend."""
        return {}


class DocumentSyntaxError(IsoreduceError):
    name = "DocumentSyntax"
    exit_code = 10

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column

    def details(self) -> dict:
        return {"line": self.line, "column": self.column}


class WeightSyntaxError(IsoreduceError):
    """Malformed weight expression; ``position`` is a 0-based offset into it."""

    name = "MalformedWeight"
    exit_code = 11

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        if text is not None:
            message = f"{message} in {text!r}"
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)
        self.position = position
        self.text = text

    def details(self) -> dict:
        return {"position": self.position, "text": self.text}


class UnknownVertex(IsoreduceError):
    name = "UnknownVertex"
    exit_code = 12

    def __init__(self, label: str):
        super().__init__(f"unknown vertex {label!r}")
        self.label = label

    def details(self) -> dict:
        return {"vertex": self.label}


class DuplicateVertex(IsoreduceError):
    name = "DuplicateVertex"
    exit_code = 13

    def __init__(self, label: str):
        super().__init__(f"duplicate vertex label {label!r}")
        self.label = label

    def details(self) -> dict:
        return {"vertex": self.label}


class DivisionByZero(IsoreduceError):
    name = "DivisionByZero"
    exit_code = 14


class PoleAtPoint(IsoreduceError):
    name = "PoleAtPoint"
    exit_code = 15

    def __init__(self, point: complex):
        super().__init__(f"evaluation at a pole: {point}")
        self.point = complex(point)

    def details(self) -> dict:
        return {"point": [self.point.real, self.point.imag]}


class RootFindingFailed(IsoreduceError):
    name = "RootFindingFailed"
    exit_code = 16

    def __init__(self, message: str, residuals: tuple[float, ...] = ()):
        super().__init__(message)
        self.residuals = tuple(residuals)

    def details(self) -> dict:
        return {"residuals": list(self.residuals)}


class DegreeCapExceeded(IsoreduceError):
    name = "DegreeCapExceeded"
    exit_code = 17


class EmptySet(IsoreduceError):
    name = "EmptySet"
    exit_code = 18


class NotStructural(IsoreduceError):
    """Raised where a structural set is required; exit code 2 matches the
    `validate` subcommand's not-structural verdict."""

    name = "NotStructural"
    exit_code = 2

    def __init__(self, message: str, cycle_witness: tuple[str, ...] | None = None,
                 lambda_loop_witness: str | None = None):
        super().__init__(message)
        self.cycle_witness = cycle_witness
        self.lambda_loop_witness = lambda_loop_witness

    def details(self) -> dict:
        return {
            "cycle_witness": list(self.cycle_witness) if self.cycle_witness else None,
            "lambda_loop_witness": self.lambda_loop_witness,
        }


class LambdaLoop(IsoreduceError):
    """A (possibly intermediate) loop weight equal to the spectral variable
    itself, which makes elimination of that vertex impossible."""

    name = "LambdaLoop"
    exit_code = 19

    def __init__(self, vertex: str, stage: str | None = None):
        msg = f"loop weight at {vertex!r} is identically the spectral variable"
        if stage:
            msg = f"{msg} ({stage})"
        super().__init__(msg)
        self.vertex = vertex
        self.stage = stage

    def details(self) -> dict:
        return {"vertex": self.vertex, "stage": self.stage}


class LoopInComplement(IsoreduceError):
    name = "LoopInComplement"
    exit_code = 20

    def __init__(self, vertices: tuple[str, ...]):
        super().__init__(f"fixed-weight reduction requires a loopless complement; "
                         f"loops at {', '.join(vertices)}")
        self.vertices = tuple(vertices)

    def details(self) -> dict:
        return {"vertices": list(self.vertices)}


class SingularBlock(IsoreduceError):
    name = "SingularBlock"
    exit_code = 21


class IdenticallyZeroDeterminant(IsoreduceError):
    name = "IdenticallyZeroDeterminant"
    exit_code = 22


class EmptyGraph(IsoreduceError):
    name = "EmptyGraph"
    exit_code = 23


class SearchBudgetExceeded(IsoreduceError):
    name = "SearchBudgetExceeded"
    exit_code = 24


class UnknownRule(IsoreduceError):
    name = "UnknownRule"
    exit_code = 25

    def __init__(self, rule: str):
        super().__init__(f"unknown selection rule {rule!r}")
        self.rule = rule

    def details(self) -> dict:
        return {"rule": self.rule}


class InputOutputError(IsoreduceError):
    name = "IoError"
    exit_code = 26


class ServerError(IsoreduceError):
    name = "ServerError"
    exit_code = 27


# verdict exit codes (not errors): a non-structural set and a non-equivalent
# pair are ordinary outcomes with pinned codes
EXIT_NOT_STRUCTURAL = 2
EXIT_NOT_EQUIVALENT = 3

_ALL_ERRORS = (
    DocumentSyntaxError, WeightSyntaxError, UnknownVertex, DuplicateVertex,
    DivisionByZero, PoleAtPoint, RootFindingFailed, DegreeCapExceeded,
    EmptySet, NotStructural, LambdaLoop, LoopInComplement, SingularBlock,
    IdenticallyZeroDeterminant, EmptyGraph, SearchBudgetExceeded, UnknownRule,
    InputOutputError, ServerError,
)

ERRORS_BY_NAME = {cls.name: cls for cls in _ALL_ERRORS}


def error_from_name(name: str, message: str) -> IsoreduceError:
    """Rebuild an error from its wire name (used by the HTTP client)."""
    cls = ERRORS_BY_NAME.get(name)
    if cls is None:
        err = ServerError(f"{name}: {message}")
        return err
    err = IsoreduceError.__new__(cls)
    Exception.__init__(err, message)
    return err
