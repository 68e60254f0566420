"""
S-expression surface syntax for patterns and ground terms.

    (f ?a (g ?a))        pattern; `?`-prefixed atoms are variables
    (+ 1 2)              ground term; numbers are nullary symbols
    ((f ?a ?b) (f ?a ?c)) multi-pattern: a list of patterns

Arities are inferred from each application and checked across occurrences
(and against a symbol table, when one is given).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from egraph.core.errors import SexprError
from egraph.core.types import SymbolTable
from query.pattern import App, Pattern, Var, check_arities

_TOKEN = re.compile(r"\(|\)|[^\s()]+")
VAR_PREFIX = "?"


@dataclass(frozen=True)
class Token:
    text: str
    position: int


# A parsed s-expression before it is read as a pattern: an atom or a list.
Sexpr = Union[Token, Tuple["Sexpr", ...]]


def tokenize(text: str) -> List[Token]:
    return [Token(m.group(), m.start()) for m in _TOKEN.finditer(text)]


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def read(self) -> Sexpr:
        if self.index >= len(self.tokens):
            raise SexprError("unexpected end of input", len(self.text))
        token = self.tokens[self.index]
        self.index += 1
        if token.text == ")":
            raise SexprError("unexpected ')'", token.position)
        if token.text != "(":
            return token
        items = []
        while True:
            if self.index >= len(self.tokens):
                raise SexprError("unclosed '('", token.position)
            if self.tokens[self.index].text == ")":
                self.index += 1
                break
            items.append(self.read())
        if not items:
            raise SexprError("empty list", token.position)
        return tuple(items)

    def read_all(self) -> Sexpr:
        expr = self.read()
        if self.index < len(self.tokens):
            extra = self.tokens[self.index]
            raise SexprError(f"trailing input '{extra.text}'", extra.position)
        return expr


def _to_pattern(expr: Sexpr) -> Pattern:
    if isinstance(expr, Token):
        if expr.text.startswith(VAR_PREFIX):
            name = expr.text[len(VAR_PREFIX):]
            if not name:
                raise SexprError("variable needs a name after '?'", expr.position)
            return Var(name)
        return App(expr.text)
    head, *args = expr
    if not isinstance(head, Token):
        raise SexprError("application head must be a symbol", _position(head))
    if head.text.startswith(VAR_PREFIX):
        raise SexprError(f"variable {head.text} cannot be applied", head.position)
    return App(head.text, tuple(_to_pattern(arg) for arg in args))


def _position(expr: Sexpr) -> int:
    while not isinstance(expr, Token):
        expr = expr[0]
    return expr.position


def parse_sexpr(text: str, symbols: SymbolTable | None = None) -> Pattern:
    """
    Parse one pattern or ground term.

    Args:
        text: S-expression text
        symbols: Table to check (and extend) with the arities found

    Raises:
        SexprError: malformed input, with the character position
        ArityError: one symbol used with two arities
    """
    pattern = _to_pattern(_Reader(text).read_all())
    check_arities([pattern], symbols)
    return pattern


def parse_multi(text: str, symbols: SymbolTable | None = None) -> List[Pattern]:
    """
    Parse a multi-pattern `(p1 p2 ...)`. A single pattern is accepted too and
    returned as a one-element list.
    """
    expr = _Reader(text).read_all()
    if isinstance(expr, tuple) and all(isinstance(item, tuple) for item in expr):
        patterns = [_to_pattern(item) for item in expr]
    else:
        patterns = [_to_pattern(expr)]
    check_arities(patterns, symbols)
    return patterns


def format_multi(patterns: Sequence[Pattern]) -> str:
    if len(patterns) == 1:
        return str(patterns[0])
    return f"({' '.join(str(p) for p in patterns)})"

