"""Translate validated queries over structured sources into SQL text.

The dialect is generic SQL92, emitted single-line with uppercase keywords
and single spaces, so identical queries yield byte-identical statements:

    Se(sales.amount Agg SUM)    ->  SELECT SUM(amount) FROM sales
    Cons(sales, amount > 10)    ->  SELECT * FROM sales WHERE amount > 10
    Differ(a.x, b.x)            ->  SELECT x FROM a EXCEPT SELECT x FROM b

Question operators translate exactly like Se (their role filtering happens
at validation time). Semant and profile queries have no SQL counterpart,
and neither does anything bound to a non-structured source. Set operations
must stay within one source: a single statement runs on a single
connection (the engine still evaluates the federated form).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CrossSourceSetOp, NotTranslatable, UnboundParameter
from .metalang import (
    BinaryOp, Cons, Expr, NumberLit, Paren, ParamRef, Predicate, Profile,
    Select, Semant, SetOp, Question, ValidatedQuery, expr_params,
)

_SETOP_SQL = {"Union": "UNION", "Inters": "INTERSECT", "Differ": "EXCEPT"}


@dataclass(frozen=True)
class SqlText:
    """One SQL statement, no trailing semicolon."""

    statement: str
    dialect: str = "generic"

    def __str__(self) -> str:
        return self.statement


def translate(vq: ValidatedQuery) -> SqlText:
    """Compile a validated Select/Question/Cons/SetOp query to SQL."""
    ast = vq.ast
    if isinstance(ast, (Semant, Profile)):
        raise NotTranslatable(f"'{ast.keyword}' queries have no SQL form")
    _require_structured(vq)

    if isinstance(ast, (Select, Question)):
        return SqlText(_select_statement(ast.items, vq.bindings))
    if isinstance(ast, Cons):
        return SqlText(_cons_statement(vq))
    if isinstance(ast, SetOp):
        return SqlText(_setop_statement(ast, vq.bindings))
    raise TypeError(f"not a query: {ast!r}")


def _require_structured(vq: ValidatedQuery) -> None:
    for binding in vq.bindings:
        if binding.category != "structured":
            raise NotTranslatable(
                f"'{binding.entity}' is backed by a "
                f"{binding.category or 'unregistered'} source")


def _select_statement(items, bindings) -> str:
    entities = {binding.entity for binding in bindings}
    if len(entities) > 1:
        raise NotTranslatable(
            "a projection over several entities has no single-statement form")
    entity = bindings[0].entity

    agg_flags = {item.agg is not None for item in items}
    if agg_flags == {True, False}:
        raise NotTranslatable(
            "aggregated and plain items cannot share one select list")
    all_agg = agg_flags == {True}

    stars = [item for item, binding in zip(items, bindings)
             if binding.attribute is None]
    if stars and not all_agg:
        if len(items) > 1:
            raise NotTranslatable(
                "a whole-entity item cannot be combined with other items")
        return f"SELECT * FROM {entity}"

    select_list = ", ".join(_select_item(item, binding)
                            for item, binding in zip(items, bindings))
    return f"SELECT {select_list} FROM {entity}"


def _select_item(item, binding) -> str:
    if item.agg is None:
        return binding.attribute
    if binding.attribute is None:
        if item.agg != "COUNT":
            raise NotTranslatable(f"{item.agg} needs an attribute")
        return "COUNT(*)"
    return f"{item.agg}({binding.attribute})"


def _cons_statement(vq: ValidatedQuery) -> str:
    binding = vq.bindings[0]
    attributes = frozenset(binding.entity_attributes)
    statement = f"SELECT * FROM {binding.entity}"
    if vq.predicates:
        conjunction = " AND ".join(translate_predicate(p, attributes)
                                   for p in vq.predicates)
        statement += f" WHERE {conjunction}"
    return statement


def _setop_statement(ast: SetOp, bindings) -> str:
    sources = {binding.source for binding in bindings}
    if len(sources) > 1:
        raise CrossSourceSetOp(sources)
    keyword = _SETOP_SQL[ast.kind]
    selects = []
    for binding in bindings:
        if binding.attribute is None:
            selects.append(f"SELECT * FROM {binding.entity}")
        else:
            selects.append(f"SELECT {binding.attribute} FROM {binding.entity}")
    return f" {keyword} ".join(selects)


def translate_predicate(p: Predicate, attributes: frozenset[str]) -> str:
    """Render one predicate; parameters must name attributes (columns)."""
    for name in sorted(expr_params(p.rhs)):
        if name not in attributes:
            raise UnboundParameter(name)
    return f"{p.attribute} {p.comparator} {render_expr(p.rhs)}"


def render_expr(expr: Expr) -> str:
    """SQL for an expression, parenthesised to preserve the tree shape."""
    if isinstance(expr, NumberLit):
        return str(expr.value)
    if isinstance(expr, ParamRef):
        return expr.name
    if isinstance(expr, Paren):
        return f"({render_expr(expr.inner)})"
    if isinstance(expr, BinaryOp):
        return f"{_operand(expr.left)} {expr.op} {_operand(expr.right)}"
    raise TypeError(f"not an expression: {expr!r}")


def _operand(expr: Expr) -> str:
    text = render_expr(expr)
    if isinstance(expr, BinaryOp):
        return f"({text})"
    return text
