from typing import Any, Optional


class WorkbenchError(Exception):
    """Base class; `exit_code` is what the command line returns for it."""

    exit_code = 1

    def __init__(self, message: str, *, witness: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class InputError(WorkbenchError, ValueError):
    exit_code = 2


class DslSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownReferenceError(InputError):
    pass


class InconsistentRepresentationError(InputError):
    pass


class NonAdmissibleError(InputError):
    pass


class NotExceptionalError(InputError):
    pass


class ChainOrderError(InputError):
    pass


class AlgebraMismatchError(InputError):
    pass


class ComputationLimitError(WorkbenchError, RuntimeError):
    exit_code = 3


class VerificationError(WorkbenchError):
    exit_code = 1

    def __init__(self, message: str, report: Any = None):
        super().__init__(message, witness=report)
        self.report = report


class InternalInconsistencyError(WorkbenchError, RuntimeError):
    exit_code = 1
