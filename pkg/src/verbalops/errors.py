"""Exception types shared across the package."""


class VerbalOpsError(Exception):
    """Base class for all package errors."""


class FieldMismatchError(VerbalOpsError):
    pass


class InvalidAutomorphismError(VerbalOpsError):
    pass


class ArityError(VerbalOpsError):
    pass


class GeneratorCountMismatchError(VerbalOpsError):
    pass


class DegreeCapExceededError(VerbalOpsError):
    pass


class FitError(VerbalOpsError):
    """Raised when a bijection cannot be read off as a polynomial word system."""


class InconsistentSystemError(VerbalOpsError):
    pass


class ParseError(VerbalOpsError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class SchemaError(VerbalOpsError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ConstraintError(VerbalOpsError):
    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        super().__init__(f"constraint violated: {constraint}" + (f" ({detail})" if detail else ""))
