"""Canonical text form for query trees.

The canonical form has a single space after each comma and around
comparators and `Agg`, and no other whitespace; arithmetic stays packed
(`(2+3)*4`). parse(pretty_print(q)) reproduces q structurally.
"""

from __future__ import annotations

from .nodes import (
    BinaryOp, Cons, Expr, NumberLit, Paren, ParamRef, Predicate, Profile,
    Query, Select, Semant, SetOp, Question,
)


def pretty_print(query: Query) -> str:
    if isinstance(query, Select):
        return f"Se({_items(query.items)})"
    if isinstance(query, Question):
        return f"{query.kind}({_items(query.items)})"
    if isinstance(query, SetOp):
        return f"{query.kind}({_items(query.items)})"
    if isinstance(query, Cons):
        parts = [query.object] + [_predicate(p) for p in query.predicates]
        return f"Cons({', '.join(parts)})"
    if isinstance(query, Semant):
        return f"Semant({query.object}.{query.term})"
    if isinstance(query, Profile):
        entries = ", ".join(f"{obj}.{weight}" for obj, weight in query.entries)
        return f"profile({entries})"
    raise TypeError(f"not a query: {query!r}")


def _items(items) -> str:
    return ", ".join(_item(it) for it in items)


def _item(item) -> str:
    text = item.object
    if item.par is not None:
        text += f".{item.par}"
    if item.agg is not None:
        text += f" Agg {item.agg}"
    return text


def _predicate(p: Predicate) -> str:
    return f"{p.attribute} {p.comparator} {print_expr(p.rhs)}"


def print_expr(expr: Expr) -> str:
    """Render an expression without whitespace, parentheses as in the tree."""
    if isinstance(expr, NumberLit):
        return str(expr.value)
    if isinstance(expr, ParamRef):
        return expr.name
    if isinstance(expr, Paren):
        return f"({print_expr(expr.inner)})"
    if isinstance(expr, BinaryOp):
        return f"{print_expr(expr.left)}{expr.op}{print_expr(expr.right)}"
    raise TypeError(f"not an expression: {expr!r}")
