class DiagrammaError(ValueError):
    """Base class for all input and contract errors raised by the package."""


class ParseError(DiagrammaError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        self.message = message
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class StructureError(ParseError):
    """A graph or diagram violates a structural invariant.

    ``grade`` is ``"Impossible"`` when the violation means no molecule could
    have this structure (self-bonds), ``None`` for plain bookkeeping errors.
    """

    def __init__(self, message: str, lineno: int | None = None, grade: str | None = None):
        self.grade = grade
        super().__init__(message, lineno)


class IllFormedDiagram(DiagrammaError):
    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:3])
        super().__init__(f"diagram is not well-formed: {summary}")
