"""Syntax tree types for the query metalanguage.

There is one query variant per operator form. All nodes are frozen
dataclasses built over tuples, so structural equality and hashing come
for free; the parser is the factory that guarantees the arity rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tokens import AGG_KINDS, COMPARATORS, QUESTION_KINDS, SETOP_KINDS


# --- arithmetic expressions (predicate right-hand sides) ---------------------

class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class NumberLit(Expr):
    value: int


@dataclass(frozen=True)
class ParamRef(Expr):
    name: str


@dataclass(frozen=True)
class Paren(Expr):
    inner: Expr


@dataclass(frozen=True)
class BinaryOp(Expr):
    op: str
    left: Expr
    right: Expr


def expr_params(expr: Expr) -> set[str]:
    """All parameter names referenced anywhere in `expr`."""
    if isinstance(expr, ParamRef):
        return {expr.name}
    if isinstance(expr, Paren):
        return expr_params(expr.inner)
    if isinstance(expr, BinaryOp):
        return expr_params(expr.left) | expr_params(expr.right)
    return set()


# --- query items ---------------------------------------------------------

@dataclass(frozen=True)
class ObjectItem:
    """A catalogue element reference: object, optional synonym/attribute
    qualifier, optional aggregation (Se items only)."""

    object: str
    par: str | None = None
    agg: str | None = None

    def __post_init__(self):
        if self.agg is not None and self.agg not in AGG_KINDS:
            raise ValueError(f"bad aggregation kind {self.agg!r}")


@dataclass(frozen=True)
class Predicate:
    attribute: str
    comparator: str
    rhs: Expr

    def __post_init__(self):
        if self.comparator not in COMPARATORS:
            raise ValueError(f"bad comparator {self.comparator!r}")


# --- query variants --------------------------------------------------------

class Query:
    """Base class; `keyword` is the leading operator keyword."""

    __slots__ = ()

    @property
    def keyword(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Select(Query):
    items: tuple[ObjectItem, ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("Se needs at least one item")

    @property
    def keyword(self) -> str:
        return "Se"


@dataclass(frozen=True)
class Question(Query):
    kind: str
    items: tuple[ObjectItem, ...]

    def __post_init__(self):
        if self.kind not in QUESTION_KINDS:
            raise ValueError(f"bad question kind {self.kind!r}")
        if not self.items:
            raise ValueError(f"{self.kind} needs at least one item")
        if self.kind in ("what", "which") and len(self.items) > 2:
            raise ValueError(f"{self.kind} takes at most two items")
        if any(item.agg for item in self.items):
            raise ValueError("aggregation is only allowed in Se items")

    @property
    def keyword(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Cons(Query):
    object: str
    predicates: tuple[Predicate, ...] = ()

    @property
    def keyword(self) -> str:
        return "Cons"


@dataclass(frozen=True)
class Semant(Query):
    object: str
    term: str

    @property
    def keyword(self) -> str:
        return "Semant"


@dataclass(frozen=True)
class Profile(Query):
    entries: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("profile needs at least one entry")
        if any(weight < 0 for _, weight in self.entries):
            raise ValueError("profile weights are non-negative")

    @property
    def keyword(self) -> str:
        return "profile"


@dataclass(frozen=True)
class SetOp(Query):
    kind: str
    items: tuple[ObjectItem, ...]

    def __post_init__(self):
        if self.kind not in SETOP_KINDS:
            raise ValueError(f"bad set operator {self.kind!r}")
        if self.kind == "Differ" and len(self.items) != 2:
            raise ValueError("Differ takes exactly two items")
        if self.kind != "Differ" and len(self.items) < 2:
            raise ValueError(f"{self.kind} takes at least two items")
        if any(item.agg for item in self.items):
            raise ValueError("aggregation is only allowed in Se items")

    @property
    def keyword(self) -> str:
        return self.kind
