"""Recursive-descent parser for polynomial expressions.

Accepted syntax: integers and ``p/q`` rationals, the variables passed in,
``+ - * / ^`` (``**`` is an alias for ``^``), parentheses and implicit
multiplication (``3x^2y`` is ``3*x^2*y``).  Division is only allowed by a
nonzero constant.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = list(names)
        self.tokens = self._tokenize()
        self.i = 0

    def _tokenize(self) -> list[tuple[str, str, int]]:
        toks = []
        pos = 0
        text = self.text
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise PolyParseError(f"unexpected character {text[start]!r}", start, text)
            start = m.start(m.lastindex)
            num, ident, op = m.groups()
            if num is not None:
                toks.append(("num", num, start))
            elif ident is not None:
                toks.extend(self._split_ident(ident, start))
            else:
                toks.append(("op", "^" if op == "**" else op, start))
            pos = m.end()
        toks.append(("end", "", len(text)))
        return toks

    def _split_ident(self, ident: str, start: int) -> list[tuple[str, str, int]]:
        if ident in self.names:
            return [("var", ident, start)]
        # "xy" means x*y when every letter is a known variable
        if all(ch in self.names for ch in ident):
            return [("var", ch, start + k) for k, ch in enumerate(ident)]
        raise PolyParseError(f"unknown variable {ident!r}", start, self.text)

    @property
    def tok(self):
        return self.tokens[self.i]

    def _advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _expect(self, value: str):
        t = self.tok
        if t[0] != "op" or t[1] != value:
            raise PolyParseError(f"expected {value!r}", t[2], self.text)
        self._advance()

    def parse(self) -> Poly:
        if self.tok[0] == "end":
            raise PolyParseError("empty expression", 0, self.text)
        p = self.expr()
        if self.tok[0] != "end":
            raise PolyParseError(f"unexpected token {self.tok[1]!r}", self.tok[2], self.text)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self._advance()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def _starts_atom(self) -> bool:
        kind, val, _ = self.tok
        return kind in ("num", "var") or (kind == "op" and val == "(")

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, val, pos = self.tok
            if kind == "op" and val == "*":
                self._advance()
                p = p * self.unary()
            elif kind == "op" and val == "/":
                self._advance()
                q = self.unary()
                if not q.is_constant or q.is_zero:
                    raise PolyParseError("division by a non-constant or zero expression", pos, self.text)
                p = p / q
            elif self._starts_atom():
                p = p * self.power()
            else:
                return p

    def unary(self) -> Poly:
        kind, val, _ = self.tok
        if kind == "op" and val in "+-":
            self._advance()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, val, _ = self.tok
        if kind == "op" and val == "^":
            self._advance()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        kind, val, pos = self.tok
        if kind == "op" and val == "-":
            raise PolyParseError("negative exponent", pos, self.text)
        if kind == "op" and val == "(":
            self._advance()
            e = self.exponent()
            self._expect(")")
            return e
        if kind != "num":
            raise PolyParseError("exponent must be a nonnegative integer", pos, self.text)
        self._advance()
        return int(val)

    def atom(self) -> Poly:
        kind, val, pos = self._advance()
        n = len(self.names)
        if kind == "num":
            return Poly.const(Fraction(int(val)), n)
        if kind == "var":
            return Poly.var(self.names.index(val), n)
        if kind == "op" and val == "(":
            p = self.expr()
            self._expect(")")
            return p
        what = "end of input" if kind == "end" else repr(val)
        raise PolyParseError(f"unexpected {what}", pos, self.text)


def parse_poly(text: str, vars: Sequence[str] = ("x", "y")) -> Poly:
    """Parse ``text`` into a canonical ``Poly`` over the variables ``vars``.

    >>> str(parse_poly("x^3*y"))
    'x^3*y'
    """
    if not 1 <= len(vars) <= 3:
        raise ValueError("between one and three variables are supported")
    return _Parser(text, vars).parse()
