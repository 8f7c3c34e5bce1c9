"""Text syntax for ring elements.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := 'L' ['^' int] | int | 'P^' int | 'GL(' int ')' | 'inv(' expr ')'
            | 'B(' expr ')' | name | '(' expr ')' | '-' factor

An optional trailing ``mod Fil(t)`` sets the precision; it wins over the
precision argument.  ``inv`` and ``B`` need a finite precision.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping

from .errors import ExprSyntaxError, PrecisionRequired
from .kring import (
    EXACT,
    GeneratorSymbol,
    KElement,
    class_b_subgroup,
    class_gl,
    k_invert_unit,
    projective_space,
    render,
)
from .varieties import load_table

RESERVED = {"L", "P", "GL", "inv", "B", "mod", "Fil"}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_MOD_SUFFIX = re.compile(r"\s*mod\s+Fil\s*\(\s*(-?\d+)\s*\)\s*$")


class _Parser:
    def __init__(self, text: str, precision, symbols: Mapping[str, GeneratorSymbol]):
        self.text = text
        self.precision = precision
        self.symbols = symbols
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.tokens.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    # helpers
    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def signed_int(self) -> int:
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
            kind, val, pos = self.peek()
        if kind != "int":
            raise ExprSyntaxError("expected an integer", pos)
        self.take()
        return sign * val

    def need_precision(self, what, pos):
        if self.precision == EXACT:
            raise PrecisionRequired(f"{what} at position {pos} needs a finite precision "
                                    "(use --prec or 'mod Fil(t)')")

    # grammar
    def parse(self) -> KElement:
        x = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return x

    def expr(self) -> KElement:
        x = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                y = self.term()
                x = x + y if val == "+" else x - y
            else:
                return x

    def term(self) -> KElement:
        x = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                x = x * self.factor()
            else:
                return x

    def factor(self) -> KElement:
        kind, val, pos = self.take()
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "op" and val == "(":
            x = self.expr()
            self.expect_op(")")
            return x
        if kind == "int":
            return KElement.integer(val)
        if kind != "name":
            raise ExprSyntaxError("expected a factor" if kind != "end" else "unexpected end of input", pos)
        if val == "L":
            if self.peek()[:2] == ("op", "^"):
                self.take()
                return KElement.lefschetz(self.signed_int())
            return KElement.lefschetz(1)
        if val == "P":
            self.expect_op("^")
            n = self.signed_int()
            if n < 0:
                raise ExprSyntaxError("P^n needs n >= 0", pos)
            return projective_space(n)
        if val == "GL":
            self.expect_op("(")
            n = self.signed_int()
            self.expect_op(")")
            if n < 1:
                raise ExprSyntaxError("GL(n) needs n >= 1", pos)
            return class_gl(n)
        if val in ("inv", "B"):
            self.need_precision(val, pos)
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            if val == "inv":
                return k_invert_unit(inner, self.precision)
            return class_b_subgroup(inner, None, self.precision)
        if val in RESERVED:
            raise ExprSyntaxError(f"{val!r} is reserved", pos)
        sym = self.symbols.get(val)
        if sym is None:
            raise ExprSyntaxError(f"unknown symbol {val!r}", pos)
        return KElement.symbol(sym)


def parse_kring_expr(text: str, precision=None,
                     symbols: Mapping[str, GeneratorSymbol] | None = None) -> KElement:
    """Parse and normalize; the result is known modulo ``Fil^precision``."""
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    tau = EXACT if precision is None else precision
    m = _MOD_SUFFIX.search(text)
    if m:
        tau = int(m.group(1))
        text = text[: m.start()]
    x = _Parser(text, tau, symbols or {}).parse()
    return x.truncate(tau) if tau != EXACT else x


def symbols_from_tables(directory) -> dict[str, GeneratorSymbol]:
    """One symbol per ``NAME.json`` cohomology table in ``directory``."""
    out = {}
    for path in sorted(Path(directory).glob("*.json")):
        name = path.stem
        if name in RESERVED or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            continue
        table = load_table(path)
        out[name] = GeneratorSymbol(name, table.dimension, True, table)
    return out


__all__ = ["parse_kring_expr", "render", "symbols_from_tables", "RESERVED"]
