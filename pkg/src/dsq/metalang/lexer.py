"""Maximal-munch lexer for the query metalanguage.

The token alphabet is ASCII: letters, digits, underscore, dot, comma,
parentheses, the comparator and arithmetic characters, and whitespace.
Anything else raises LexError with the byte offset of the offending
character. Keywords are case-sensitive; `se` is an ordinary identifier.
"""

from __future__ import annotations

import string

from ..errors import LexError
from .tokens import AGG_KINDS, KEYWORDS, Token, TokenKind

_LETTERS = frozenset(string.ascii_letters)
_DIGITS = frozenset(string.digits)
_IDENT_TAIL = _LETTERS | _DIGITS | {"_"}
_WHITESPACE = frozenset(" \t\r\n")


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    """Split `text` into tokens covering every non-whitespace character."""
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in _WHITESPACE:
            i += 1
            continue
        if ch in _LETTERS:
            j = i + 1
            while j < n and text[j] in _IDENT_TAIL:
                j += 1
            word = text[i:j]
            if word in KEYWORDS:
                kind = TokenKind.KEYWORD
            elif word in AGG_KINDS:
                kind = TokenKind.AGG
            else:
                kind = TokenKind.IDENT
            tokens.append(Token(kind, word, i, j))
            i = j
            continue
        if ch in _DIGITS:
            j = i + 1
            while j < n and text[j] in _DIGITS:
                j += 1
            tokens.append(Token(TokenKind.NUMBER, text[i:j], i, j))
            i = j
            continue
        if ch in "<>=":
            two = text[i:i + 2]
            if two in ("<>", "<=", ">="):
                tokens.append(Token(TokenKind.COMPARATOR, two, i, i + 2))
                i += 2
                continue
            tokens.append(Token(TokenKind.COMPARATOR, ch, i, i + 1))
            i += 1
            continue
        if ch in "+-*/":
            tokens.append(Token(TokenKind.ARITH, ch, i, i + 1))
            i += 1
            continue
        if ch == "(":
            tokens.append(Token(TokenKind.LPAREN, ch, i, i + 1))
            i += 1
            continue
        if ch == ")":
            tokens.append(Token(TokenKind.RPAREN, ch, i, i + 1))
            i += 1
            continue
        if ch == ",":
            tokens.append(Token(TokenKind.COMMA, ch, i, i + 1))
            i += 1
            continue
        if ch == ".":
            tokens.append(Token(TokenKind.DOT, ch, i, i + 1))
            i += 1
            continue
        if ch == "_":
            # In the alphabet, but no token may start with it.
            raise LexError(_byte_offset(text, i), "no token starts with '_'")
        raise LexError(_byte_offset(text, i))
    return tokens
