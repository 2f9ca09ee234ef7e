"""Exception hierarchy shared by all dsq modules.

Everything raised on purpose derives from DsqError, so callers (the CLI in
particular) can separate domain failures from genuine bugs. Plain I/O
problems surface as the builtin OSError.
"""

from __future__ import annotations


class DsqError(Exception):
    """Base class for all domain errors."""


# --- query language ---------------------------------------------------------

class LexError(DsqError):
    """Input contains a character outside the token alphabet."""

    def __init__(self, offset: int, detail: str = ""):
        suffix = f": {detail}" if detail else ""
        super().__init__(f"cannot lex input at byte offset {offset}{suffix}")
        self.offset = offset


class ParseError(DsqError):
    def __init__(self, expected: str, found: str, offset: int):
        super().__init__(f"expected {expected}, found {found} at offset {offset}")
        self.expected = expected
        self.found = found
        self.offset = offset


class EmptyArgList(ParseError):
    """`Op()` with nothing between the parentheses."""

    def __init__(self, keyword: str, offset: int):
        ParseError.__init__(self, "at least one argument", "')'", offset)
        self.args = (f"{keyword}() takes at least one argument (offset {offset})",)
        self.keyword = keyword


# --- validation -------------------------------------------------------------

class ValidationError(DsqError):
    pass


class UnknownObject(ValidationError):
    def __init__(self, name: str):
        super().__init__(f"unknown catalogue object '{name}'")
        self.name = name


class UnknownAttribute(ValidationError):
    def __init__(self, entity: str, name: str):
        super().__init__(f"entity '{entity}' has no attribute '{name}'")
        self.entity = entity
        self.name = name


class AmbiguousSynonym(ValidationError):
    """A name or synonym resolves to more than one catalogue element."""

    def __init__(self, name: str, candidates):
        cands = sorted(candidates)
        super().__init__(f"'{name}' is ambiguous: {', '.join(cands)}")
        self.name = name
        self.candidates = cands


class RoleMismatch(ValidationError):
    def __init__(self, kind: str, entity: str, role: str):
        super().__init__(
            f"'{kind}' queries accept elements tagged '{role}', "
            f"but entity '{entity}' is tagged otherwise"
        )
        self.kind = kind
        self.entity = entity
        self.role = role


# --- catalog ----------------------------------------------------------------

class CatalogError(DsqError):
    pass


class FormatError(CatalogError):
    def __init__(self, detail: str):
        super().__init__(f"bad catalog document: {detail}")
        self.detail = detail


class InvariantViolation(CatalogError):
    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        super().__init__("; ".join(problems))
        self.problems = list(problems)


class NotFound(CatalogError):
    def __init__(self, path: str):
        super().__init__(f"no catalogue element at '{path}'")
        self.path = path


class UnknownParent(CatalogError):
    def __init__(self, path: str):
        super().__init__(f"parent path '{path}' does not exist")
        self.path = path


class CatalogLocked(CatalogError):
    def __init__(self, path: str):
        super().__init__(f"catalog '{path}' is locked by another process")
        self.path = path


# --- source adapters --------------------------------------------------------

class AdapterError(DsqError):
    pass


class UnsupportedFormat(AdapterError):
    def __init__(self, extension: str):
        shown = extension or "<none>"
        super().__init__(f"unsupported source format '{shown}'")
        self.extension = extension


class RaggedRow(AdapterError):
    def __init__(self, line: int, detail: str = ""):
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"row at line {line} does not match the header{suffix}")
        self.line = line


class MalformedDocument(AdapterError):
    pass


class NestedArrayUnsupported(AdapterError):
    def __init__(self, path: str):
        super().__init__(f"nested sequence at '{path}' is not supported")
        self.path = path


# --- state-machine agent ----------------------------------------------------

class AgentError(DsqError):
    pass


class LabelSyntaxError(AgentError):
    pass


class NoTransition(AgentError):
    def __init__(self, state: str, event: str):
        super().__init__(f"no enabled transition from '{state}' on '{event}'")
        self.state = state
        self.event = event


class GuardEvalError(AgentError):
    pass


# --- engine -----------------------------------------------------------------

class EngineError(DsqError):
    pass


class ColumnMismatch(EngineError):
    pass


class NonNumericColumn(EngineError):
    def __init__(self, column: str, kind: str):
        super().__init__(f"{kind} needs a numeric column, '{column}' is not")
        self.column = column
        self.kind = kind


class NegativeDuration(EngineError):
    def __init__(self, value):
        super().__init__(f"durations must be >= 0, got {value}")
        self.value = value


class NegativeWeight(EngineError):
    def __init__(self, value):
        super().__init__(f"profile weights must be >= 0, got {value}")
        self.value = value


# --- SQL translation --------------------------------------------------------

class SqlGenError(DsqError):
    pass


class NotTranslatable(SqlGenError):
    def __init__(self, reason: str):
        super().__init__(f"query cannot be translated to SQL: {reason}")
        self.reason = reason


class CrossSourceSetOp(SqlGenError):
    def __init__(self, sources):
        srcs = sorted(set(sources))
        super().__init__(f"set operation spans several sources: {', '.join(srcs)}")
        self.sources = srcs


class UnboundParameter(SqlGenError):
    def __init__(self, name: str):
        super().__init__(f"parameter '{name}' does not name an attribute")
        self.name = name
