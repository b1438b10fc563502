from typing import Optional


class DigraphError(ValueError):
    """Invalid digraph construction or surgery arguments."""


class CoverSpecError(ValueError):
    """A solver was handed a spec that fails validate_spec."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid cover spec")


class PreconditionError(ValueError):
    """The theorem hypothesis a constructive solver relies on does not hold."""

    def __init__(self, condition: str, detail: Optional[str] = None):
        self.condition = condition
        self.detail = detail
        message = condition if detail is None else f"{condition} ({detail})"
        super().__init__(message)


class ConstructionDefect(RuntimeError):
    """A proof step failed although its hypothesis held. Always a bug."""


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
