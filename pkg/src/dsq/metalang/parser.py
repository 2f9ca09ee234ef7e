"""Recursive-descent parser for the query metalanguage.

A query is a single operator application: the leading keyword selects the
variant, then a parenthesised argument list follows. Arity rules:

  Se / who / where / how     one or more items
  what / which               one or two items
  Union / Inters             two or more items
  Differ                     exactly two items
  Cons                       object, then zero or more predicates
  Semant                     object '.' term
  profile                    one or more object '.' weight entries

Items in Se may carry `Agg SUM|COUNT|AVG`; nowhere else. Trailing input
after the closing parenthesis is an error.
"""

from __future__ import annotations

from ..errors import EmptyArgList, ParseError
from .lexer import tokenize
from .nodes import (
    BinaryOp, Cons, Expr, NumberLit, ObjectItem, Paren, ParamRef, Predicate,
    Profile, Query, Select, Semant, SetOp, Question,
)
from .tokens import QUESTION_KINDS, SETOP_KINDS, Token, TokenKind


class _Cursor:
    def __init__(self, tokens: list[Token], length: int):
        self.tokens = tokens
        self.length = length
        self.pos = 0

    def peek(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("more input", "end of input", self.length)
        self.pos += 1
        return tok

    def expect(self, kind: TokenKind, what: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(what, "end of input", self.length)
        if tok.kind is not kind:
            raise ParseError(what, repr(tok.text), tok.start)
        self.pos += 1
        return tok

    def at(self, kind: TokenKind, text: str | None = None) -> bool:
        tok = self.peek()
        if tok is None or tok.kind is not kind:
            return False
        return text is None or tok.text == text

    def offset(self) -> int:
        tok = self.peek()
        return self.length if tok is None else tok.start


def parse(text: str) -> Query:
    """Parse `text` into a query tree; raises LexError or ParseError."""
    cur = _Cursor(tokenize(text), len(text.encode("utf-8")))
    head = cur.peek()
    if head is None:
        raise ParseError("a query operator", "end of input", 0)
    if head.kind is not TokenKind.KEYWORD or head.text == "Agg":
        raise ParseError("a query operator", repr(head.text), head.start)
    cur.advance()
    keyword = head.text

    if keyword == "Se":
        items = _item_list(cur, keyword, allow_agg=True)
        query: Query = Select(items)
    elif keyword in QUESTION_KINDS:
        limit = 2 if keyword in ("what", "which") else None
        items = _item_list(cur, keyword, allow_agg=False, at_most=limit)
        query = Question(keyword, items)
    elif keyword in SETOP_KINDS:
        items = _item_list(cur, keyword, allow_agg=False)
        if keyword == "Differ" and len(items) != 2:
            raise ParseError("exactly two Differ items",
                             f"{len(items)} items", cur.offset())
        if keyword != "Differ" and len(items) < 2:
            raise ParseError(f"at least two {keyword} items",
                             f"{len(items)} item", cur.offset())
        query = SetOp(keyword, items)
    elif keyword == "Cons":
        query = _cons(cur)
    elif keyword == "Semant":
        query = _semant(cur)
    else:  # profile
        query = _profile(cur)

    trailing = cur.peek()
    if trailing is not None:
        raise ParseError("end of input", repr(trailing.text), trailing.start)
    return query


def _open_args(cur: _Cursor, keyword: str) -> None:
    cur.expect(TokenKind.LPAREN, "'('")
    if cur.at(TokenKind.RPAREN):
        raise EmptyArgList(keyword, cur.offset())


def _item_list(cur: _Cursor, keyword: str, allow_agg: bool,
               at_most: int | None = None) -> tuple[ObjectItem, ...]:
    _open_args(cur, keyword)
    items = [_item(cur, allow_agg)]
    while cur.at(TokenKind.COMMA):
        if at_most is not None and len(items) >= at_most:
            raise ParseError("')'", "','", cur.offset())
        cur.advance()
        items.append(_item(cur, allow_agg))
    cur.expect(TokenKind.RPAREN, "')'")
    return tuple(items)


def _item(cur: _Cursor, allow_agg: bool) -> ObjectItem:
    obj = cur.expect(TokenKind.IDENT, "an object name").text
    par = None
    if cur.at(TokenKind.DOT):
        cur.advance()
        par = cur.expect(TokenKind.IDENT, "a synonym or attribute name").text
    agg = None
    if allow_agg and cur.at(TokenKind.KEYWORD, "Agg"):
        cur.advance()
        agg = cur.expect(TokenKind.AGG, "SUM, COUNT or AVG").text
    return ObjectItem(obj, par, agg)


def _cons(cur: _Cursor) -> Cons:
    _open_args(cur, "Cons")
    obj = cur.expect(TokenKind.IDENT, "an object name").text
    predicates = []
    while cur.at(TokenKind.COMMA):
        cur.advance()
        predicates.append(_predicate(cur))
    cur.expect(TokenKind.RPAREN, "')'")
    return Cons(obj, tuple(predicates))


def _predicate(cur: _Cursor) -> Predicate:
    attr = cur.expect(TokenKind.IDENT, "an attribute name").text
    cmp = cur.expect(TokenKind.COMPARATOR, "a comparator").text
    rhs = _expr(cur)
    return Predicate(attr, cmp, rhs)


def _expr(cur: _Cursor) -> Expr:
    node = _operand(cur)
    while cur.at(TokenKind.ARITH):
        op = cur.advance().text
        node = BinaryOp(op, node, _operand(cur))
    return node


def _operand(cur: _Cursor) -> Expr:
    tok = cur.peek()
    if tok is None:
        raise ParseError("an operand", "end of input", cur.length)
    if tok.kind is TokenKind.NUMBER:
        cur.advance()
        return NumberLit(int(tok.text))
    if tok.kind is TokenKind.IDENT:
        cur.advance()
        return ParamRef(tok.text)
    if tok.kind is TokenKind.LPAREN:
        cur.advance()
        inner = _expr(cur)
        cur.expect(TokenKind.RPAREN, "')'")
        return Paren(inner)
    raise ParseError("an operand", repr(tok.text), tok.start)


def _semant(cur: _Cursor) -> Semant:
    _open_args(cur, "Semant")
    obj = cur.expect(TokenKind.IDENT, "an object name").text
    cur.expect(TokenKind.DOT, "'.' and a term")
    term = cur.expect(TokenKind.IDENT, "a term").text
    cur.expect(TokenKind.RPAREN, "')'")
    return Semant(obj, term)


def _profile(cur: _Cursor) -> Profile:
    _open_args(cur, "profile")
    entries = [_profile_entry(cur)]
    while cur.at(TokenKind.COMMA):
        cur.advance()
        entries.append(_profile_entry(cur))
    cur.expect(TokenKind.RPAREN, "')'")
    return Profile(tuple(entries))


def _profile_entry(cur: _Cursor) -> tuple[str, int]:
    obj = cur.expect(TokenKind.IDENT, "an object name").text
    cur.expect(TokenKind.DOT, "'.' and a weight")
    weight = cur.expect(TokenKind.NUMBER, "a weight").text
    return obj, int(weight)
