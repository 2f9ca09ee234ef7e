"""Query metalanguage: lexer, parser, canonical printer, validator."""

from .lexer import tokenize
from .nodes import (
    BinaryOp, Cons, Expr, NumberLit, ObjectItem, Paren, ParamRef, Predicate,
    Profile, Query, Select, Semant, SetOp, Question, expr_params,
)
from .parser import parse
from .printer import pretty_print, print_expr
from .tokens import (
    AGG_KINDS, COMPARATORS, KEYWORDS, QUESTION_KINDS, SETOP_KINDS, Token,
    TokenKind,
)
from .validator import (
    Binding, FORMAT_CATEGORIES, ROLE_BY_KIND, ValidatedQuery, validate,
)

__all__ = [
    "AGG_KINDS", "BinaryOp", "Binding", "COMPARATORS", "Cons", "Expr",
    "FORMAT_CATEGORIES", "KEYWORDS", "NumberLit", "ObjectItem", "Paren",
    "ParamRef", "Predicate", "Profile", "QUESTION_KINDS", "Query",
    "ROLE_BY_KIND", "SETOP_KINDS", "Select", "Semant", "SetOp", "Question",
    "Token", "TokenKind", "ValidatedQuery", "expr_params", "parse",
    "pretty_print", "print_expr", "tokenize", "validate",
]
