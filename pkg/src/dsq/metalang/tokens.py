"""Token kinds and the token record produced by the lexer."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    KEYWORD = "operator-keyword"
    IDENT = "identifier"
    NUMBER = "number-literal"
    AGG = "agg-kind"
    COMPARATOR = "comparator"
    ARITH = "arith-op"
    LPAREN = "lparen"
    RPAREN = "rparen"
    COMMA = "comma"
    DOT = "dot"


# Leading keywords that open a query, plus the infix marker `Agg`.
KEYWORDS = frozenset({
    "where", "who", "how", "Se", "what", "which",
    "Semant", "Cons", "profile", "Union", "Inters", "Differ", "Agg",
})

AGG_KINDS = ("SUM", "COUNT", "AVG")
COMPARATORS = ("=", "<>", "<", "<=", ">", ">=")
ARITH_OPS = ("+", "-", "*", "/")

QUESTION_KINDS = ("who", "where", "what", "which", "how")
SETOP_KINDS = ("Union", "Inters", "Differ")


@dataclass(frozen=True)
class Token:
    """One lexeme with its [start, end) byte span in the input."""

    kind: TokenKind
    text: str
    start: int
    end: int

    def __repr__(self) -> str:
        return f"Token({self.kind.name}, {self.text!r}, {self.start}:{self.end})"
