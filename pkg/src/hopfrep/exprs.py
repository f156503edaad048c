"""Expression grammar for identity files and the CLI.

Atoms are generator symbols (``g ginv y a1 a2 x1 x2 x21``), scalar literals in
the exact-scalar grammar (``3``, ``-1/2``, ``sqrt(2)``), and parenthesized
subexpressions.  Juxtaposition or ``*`` is (noncommutative) product, ``+``/``-``
add, ``^`` takes integer powers.  Example: ``x2^2x1 - x1x2^2 - x1x2x1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import Scalar, sc
from .presentations import NcPoly, Presentation

_TOKEN = re.compile(
    r"\s*(?:(?P<sqrt>sqrt\(\s*-?\d+\s*\))|(?P<name>[A-Za-z][A-Za-z0-9]*)"
    r"|(?P<number>\d+(?:/\d+)?)|(?P<op>[-+*^()]))"
)


class ExprError(ValueError):
    pass


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprError(f"bad token at {text[pos:pos+10]!r}")
        pos = m.end()
        for kind in ("sqrt", "name", "number", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind, val))
                break
    return tokens


class _Parser:
    def __init__(self, tokens: List[Tuple[str, str]], pres: Presentation):
        self.tokens = tokens
        self.i = 0
        self.pres = pres

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        self.i += 1
        return tok

    def parse_expr(self) -> NcPoly:
        sign = 1
        tok = self.peek()
        if tok == ("op", "-"):
            self.next()
            sign = -1
        elif tok == ("op", "+"):
            self.next()
        acc = self.parse_term().scale(sc(sign))
        while True:
            tok = self.peek()
            if tok == ("op", "+"):
                self.next()
                acc = acc + self.parse_term()
            elif tok == ("op", "-"):
                self.next()
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> NcPoly:
        acc = self.parse_factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.next()
                acc = acc * self.parse_factor()
            elif tok is not None and (tok[0] in ("name", "number", "sqrt") or tok == ("op", "(")):
                acc = acc * self.parse_factor()
            else:
                return acc

    def parse_factor(self) -> NcPoly:
        base = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.next()
            neg = False
            if self.peek() == ("op", "-"):
                self.next()
                neg = True
            kind, val = self.next()
            if kind != "number" or "/" in val:
                raise ExprError("exponent must be an integer")
            n = int(val)
            if neg:
                base = self._invert(base)
            return base**n
        return base

    def _invert(self, p: NcPoly) -> NcPoly:
        terms = list(p.terms.items())
        if len(terms) == 1:
            w, c = terms[0]
            if not w:
                return NcPoly.const(c.inv())
            if w == ("g",) and c.is_one():
                return NcPoly.gen("ginv")
            if w == ("ginv",) and c.is_one():
                return NcPoly.gen("g")
        raise ExprError("negative powers only for g, ginv and nonzero scalars")

    def parse_atom(self) -> NcPoly:
        kind, val = self.next()
        if kind == "number":
            return NcPoly.const(Fraction(val))
        if kind == "sqrt":
            d = int(val[val.index("(") + 1 : -1])
            return NcPoly.const(Scalar(0, 1, d))
        if kind == "name":
            if val not in self.pres.generators:
                raise ExprError(f"unknown generator {val!r} for algebra {self.pres.name}")
            return NcPoly.gen(val)
        if (kind, val) == ("op", "("):
            inner = self.parse_expr()
            if self.next() != ("op", ")"):
                raise ExprError("missing closing parenthesis")
            return inner
        if (kind, val) == ("op", "-"):
            return -self.parse_atom()
        raise ExprError(f"unexpected token {val!r}")


def parse_expression(text: str, pres: Presentation) -> NcPoly:
    parser = _Parser(_tokenize(text), pres)
    result = parser.parse_expr()
    if parser.peek() is not None:
        raise ExprError(f"trailing tokens starting at {parser.peek()[1]!r}")
    return result
