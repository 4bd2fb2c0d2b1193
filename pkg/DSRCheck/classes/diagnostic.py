from dataclasses import dataclass, field
from typing import Any, Dict, Optional

ERROR = "error"
WARNING = "warning"

# diagnostic code families, used to derive the CLI exit code
PARSE_CODES = frozenset({"PARSE", "DUPDATA", "DUPCTOR"})
SIGNATURE_CODES = frozenset(
    {
        "DUPSORT",
        "UNKNOWN_DATATYPE",
        "UNKNOWN_CTOR",
        "UNDECLARED_SORT",
        "SUBSORT_BACKPATCH",
        "SUBSORT_MISMATCH",
        "CTOR_MISMATCH",
        "UNSAFE_CTOR",
        "SCOPE",
    }
)


@dataclass(frozen=True)
class Span:
    """
    A region of the input text, 1-based line and column
    """

    line: int
    column: int
    length: int = 1

    def asdict(self) -> Dict[str, int]:
        return {"line": self.line, "col": self.column, "length": self.length}


@dataclass(frozen=True)
class Diagnostic:
    """
    A user-facing report produced by the parser, the signature checker or the typechecker
    """

    code: str
    message: str
    span: Optional[Span] = None
    severity: str = ERROR
    extra: Optional[Dict[str, Any]] = field(default=None, compare=False, hash=False)

    def with_span(self, span: Optional[Span]) -> "Diagnostic":
        """
        Attach a span unless one is already present
        """
        if self.span is not None or span is None:
            return self
        return Diagnostic(self.code, self.message, span, self.severity, self.extra)

    def sort_key(self):
        line, col = (self.span.line, self.span.column) if self.span else (0, 0)
        return (line, col, self.code, self.message)

    def asdict(self) -> Dict[str, Any]:
        """
        Serialized as a dict, the shape used by `sortc --json`
        """
        return {
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
            "line": self.span.line if self.span else None,
            "col": self.span.column if self.span else None,
            "extra": self.extra,
        }

    def __str__(self) -> str:
        where = f"{self.span.line}:{self.span.column}: " if self.span else ""
        return f"{where}{self.severity} [{self.code}] {self.message}"


def exit_code(diagnostics) -> int:
    """
    0 = ok, 2 = parse error, 3 = signature error, 1 = any other error
    """
    codes = {d.code for d in diagnostics if d.severity == ERROR}
    if not codes:
        return 0
    if codes & PARSE_CODES:
        return 2
    if codes & SIGNATURE_CODES:
        return 3
    return 1


class DSRCheckError(Exception):
    """
    Base exception, carries the diagnostic describing the failure
    """

    code = "INTERNAL"

    def __init__(self, message: str, span: Optional[Span] = None, extra=None):
        super().__init__(message)
        self.diagnostic = Diagnostic(self.code, message, span, ERROR, extra)


class ParseError(DSRCheckError):
    """
    This exception indicates that the program text could not be parsed
    """

    code = "PARSE"


class UndeclaredSortError(DSRCheckError):
    """
    This exception indicates that a subsort edge mentions a sort outside the signature domain
    """

    code = "UNDECLARED_SORT"


class UnknownCtorError(DSRCheckError):
    """
    This exception indicates a constructor missing from the unrefined signature
    """

    code = "UNKNOWN_CTOR"


class IllTypedScrutinyError(DSRCheckError):
    """
    This exception indicates that a type and a pattern have incompatible shapes
    """

    code = "ILLTYPED_SCRUTINY"


class TypeCheckError(DSRCheckError):
    """
    This exception indicates that an expression failed to typecheck
    """

    code = "TYPE_MISMATCH"

    def __init__(self, diagnostic: Diagnostic):
        Exception.__init__(self, diagnostic.message)
        self.diagnostic = diagnostic


class NoSynthesisError(TypeCheckError):
    """
    This exception indicates that no type could be synthesized for an expression
    """

    code = "NO_SYNTH"
