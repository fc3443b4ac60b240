"""Error taxonomy shared by services, the CLI and the HTTP API.

Every error carries a stable ``code`` (used in API error payloads) and the
process ``exit_code`` the CLI maps it to.
"""

from typing import List, Optional, Sequence


class WorkbenchError(Exception):
    code = "workbench-error"
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ShapeError(WorkbenchError):
    code = "shape-error"


class ParseError(WorkbenchError):
    code = "parse-error"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class AxiomViolation(WorkbenchError):
    """Raised with every violated axiom, each with its first witness."""

    code = "axiom-violation"

    def __init__(self, violations: Sequence):
        self.violations = list(violations)
        summary = ", ".join(f"{v.axiom}{tuple(v.witness)}" for v in self.violations)
        super().__init__(f"semiring axioms violated: {summary}")

    @property
    def axioms(self) -> List[str]:
        return [v.axiom for v in self.violations]

    @property
    def axiom(self) -> str:
        return self.violations[0].axiom


class UnknownFamily(WorkbenchError):
    code = "unknown-family"


class InvalidParam(WorkbenchError):
    code = "invalid-param"


class ParentMismatch(WorkbenchError):
    code = "parent-mismatch"


class EmptyFamily(WorkbenchError):
    code = "empty-family"


class NotAnIdeal(WorkbenchError):
    code = "not-an-ideal"


class SpaceMismatch(WorkbenchError):
    code = "space-mismatch"


class NotSurjective(WorkbenchError):
    code = "not-surjective"


class CapExceeded(WorkbenchError):
    code = "cap-exceeded"
    exit_code = 3

    def __init__(self, what: str, limit: int, partial: Optional[int] = None):
        detail = f" (reached {partial})" if partial is not None else ""
        super().__init__(f"{what} exceeds cap {limit}{detail}")
        self.what = what
        self.limit = limit
        self.partial = partial


class InternalConsistencyError(WorkbenchError):
    """Two computations that must agree did not."""

    code = "internal-consistency"
    exit_code = 1
