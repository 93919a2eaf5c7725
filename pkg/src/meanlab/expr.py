"""Tiny expression language for naming means on the command line.

Grammar::

    expr   := ELEM | func
    ELEM   := "H" | "G" | "L" | "I" | "A" | "S" | "P" | "T"
    func   := "holder" "(" num ")"   | "lehmer" "(" num ")"
            | "genlog" "(" num ")"   | "stolarsky" "(" num "," num ")"
            | "lambda" "(" num ")"   | "k" "(" num ")"
            | "dual" "(" expr ")"    | "pow" "(" expr "," num ")"
    num    := NUMBER | NUMBER "/" NUMBER        (rationals like -1/3)

Numbers may be signed decimals with optional exponent.  Errors carry the
character position that broke the parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import core, families
from .core import MeanDescriptor

__all__ = ["MeanExprError", "parse_mean_expr"]


class MeanExprError(ValueError):
    """Syntax error in a mean expression; ``pos`` is the offending offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME NUMBER LPAREN RPAREN COMMA SLASH END
    text: str
    pos: int


_TOKEN_RE = re.compile(r"""
    (?P<WS>\s+)
  | (?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<NUMBER>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<LPAREN>\()
  | (?P<RPAREN>\))
  | (?P<COMMA>,)
  | (?P<SLASH>/)
""", re.VERBOSE)


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise MeanExprError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "WS":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("END", "", len(text)))
    return tokens


_ARITY_ONE = {
    "holder": families.holder,
    "lehmer": families.lehmer,
    "genlog": families.gen_log,
    "lambda": families.lambda_mean,
    "k": families.k_mean,
}

_VALID_FORMS = ("H G L I A S P T, holder(s), lehmer(r), genlog(p), "
                "stolarsky(r,s), lambda(s), k(r), dual(expr), pow(expr,s)")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise MeanExprError(f"expected {what}, found {shown!r}", tok.pos)
        return self.advance()

    def parse_number(self) -> float:
        tok = self.expect("NUMBER", "a number")
        value = float(tok.text)
        if self.peek().kind == "SLASH":
            self.advance()
            den_tok = self.expect("NUMBER", "a denominator")
            den = float(den_tok.text)
            if den == 0.0:
                raise MeanExprError("rational denominator is zero", den_tok.pos)
            value /= den
        return value

    def parse_expr(self) -> MeanDescriptor:
        tok = self.expect("NAME", "a mean name")
        name = tok.text
        if name in core.ELEMENTARY:
            if self.peek().kind == "LPAREN":
                raise MeanExprError(f"{name} takes no arguments", self.peek().pos)
            return core.ELEMENTARY[name]
        if name in _ARITY_ONE:
            self.expect("LPAREN", "'('")
            param = self.parse_number()
            self.expect("RPAREN", "')'")
            return _ARITY_ONE[name](param)
        if name == "stolarsky":
            self.expect("LPAREN", "'('")
            r = self.parse_number()
            self.expect("COMMA", "','")
            s = self.parse_number()
            self.expect("RPAREN", "')'")
            return families.stolarsky(r, s)
        if name == "dual":
            self.expect("LPAREN", "'('")
            inner = self.parse_expr()
            self.expect("RPAREN", "')'")
            return core.dual(inner)
        if name == "pow":
            self.expect("LPAREN", "'('")
            inner = self.parse_expr()
            self.expect("COMMA", "','")
            s = self.parse_number()
            self.expect("RPAREN", "')'")
            return families.power_transform(inner, s)
        raise MeanExprError(
            f"unknown mean {name!r}; valid forms: {_VALID_FORMS}", tok.pos)


def parse_mean_expr(text: str) -> MeanDescriptor:
    """Parse a mean expression like ``pow(dual(S), 1/2)`` into a descriptor.

    Raises :class:`MeanExprError` on syntax problems (with position) and
    :class:`~meanlab.families.ParameterError` when a parameter is out of the
    supported range.
    """
    parser = _Parser(text)
    result = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "END":
        raise MeanExprError(f"trailing input {trailing.text!r}", trailing.pos)
    return result
