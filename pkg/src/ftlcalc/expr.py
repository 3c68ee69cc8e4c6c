"""Ring-expression mini-language.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | INT | SYMBOL ('^' SINT)? | '(' expr ')' ('^' INT)?

Symbols are ``eps``, ``h``, ``tau``, ``gamma``; which ones are legal depends
on the ring.  ``/`` is only accepted in rational rings and only by an
integer literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .rings import IllegalSymbol, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ExprSyntaxError(ValueError):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str
    power: int = 1
    offset: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    power: int


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("sym", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", len(text[:start].encode("utf-8")))
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(text.encode("utf-8"))))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1]!r}", self._off(tok))
        self.i += 1
        return tok

    def _off(self, tok):
        # byte offset of a character offset
        return len(self.text[: tok[2]].encode("utf-8")) if tok[0] != "end" else tok[2]

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", self._off(tok))
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.factor())
        return node

    def _sint(self):
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        val = self.take("int")[1]
        return -val if neg else val

    def factor(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "-":
            self.take()
            return Neg(self.factor())
        if kind == "int":
            self.take()
            return Num(tok[1])
        if kind == "sym":
            self.take()
            power = 1
            if self.peek()[0] == "^":
                self.take()
                power = self._sint()
            return Sym(tok[1], power, self._off(tok))
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            if self.peek()[0] == "^":
                self.take()
                node = Pow(node, self.take("int")[1])
            return node
        what = "end of input" if kind == "end" else repr(tok[1])
        raise ExprSyntaxError(f"unexpected {what}", self._off(tok))


def parse_ast(text: str):
    return _Parser(text).parse()


def evaluate(node, ring: Ring):
    if isinstance(node, Num):
        return ring.coerce(node.value)
    if isinstance(node, Sym):
        try:
            base = ring.symbols[node.name]
        except KeyError:
            raise IllegalSymbol(
                f"symbol {node.name!r} (offset {node.offset}) is not allowed in ring {ring.tag!r}"
            ) from None
        base = ring.coerce(base)
        if node.power < 0:
            return ring.inverse(base) ** (-node.power)
        return base ** node.power
    if isinstance(node, Neg):
        return -evaluate(node.arg, ring)
    if isinstance(node, Pow):
        return evaluate(node.base, ring) ** node.power
    if isinstance(node, BinOp):
        left = evaluate(node.left, ring)
        if node.op == "/":
            if not ring.rational:
                raise IllegalSymbol(f"division is not allowed in ring {ring.tag!r}")
            if not isinstance(node.right, Num):
                raise IllegalSymbol("only division by an integer literal is supported")
            if node.right.value == 0:
                raise ZeroDivisionError("division by zero in expression")
            return left * ring.coerce(Fraction(1, node.right.value))
        right = evaluate(node.right, ring)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"bad node {node!r}")


def parse_expr(text: str, ring: Ring):
    """Parse ``text`` into a normal-form element of ``ring``."""
    return evaluate(parse_ast(text), ring)


def serialize(x, ring: Ring) -> str:
    return ring.fmt(x)
