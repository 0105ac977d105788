"""Polynomial expressions: ``2*x^3 - y@1*(x + 1/2)``.

Grammar (whitespace is ignored, multiplication is always explicit)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'

``IDENT`` is a letter or ``_`` followed by letters, digits or ``_``, with an
optional ``@q`` jet suffix.  Errors report ``line:col``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import NegativeExponent, ParseError, UnknownVariable

__all__ = ["tokenize", "parse_polynomial", "parse_many", "parse_series", "variables_in"]

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:@\d+)?)|(?P<op>[-+*/^()])"
)


def tokenize(text: str):
    """List of ``(kind, value, line, col)``; ends with an ``("end", "", ...)`` token."""
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", line, col, text[pos])
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            out.append((kind, val, line, col))
        for ch in val:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    out.append(("end", "", line, col))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        kind, val, line, col = tok or self.peek()
        raise ParseError(msg, line, col, val or "<end>")

    def expect(self, val):
        tok = self.peek()
        if tok[1] != val or tok[0] == "end":
            self.fail(f"expected {val!r}")
        return self.take()

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        nxt = self.peek()
        if nxt[0] in ("num", "ident") or nxt[1] == "(":
            self.fail("missing operator (multiplication must be written with '*')")
        return acc

    def unary(self):
        tok = self.peek()
        if tok[1] == "-":
            self.take()
            return -self.unary()
        if tok[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[1] == "-":
                raise NegativeExponent(f"{tok[2]}:{tok[3]}: negative exponents are not polynomial")
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer")
            self.take()
            base = base ** int(tok[1])
            if self.peek()[1] == "^":
                self.fail("chained exponents need parentheses")
        return base

    def atom(self):
        tok = self.peek()
        kind, val = tok[0], tok[1]
        R = self.ring
        if kind == "num":
            self.take()
            c = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "num":
                    self.fail("expected an integer denominator")
                self.take()
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                c = Fraction(int(val), int(den[1]))
            return R.const(R.field.convert(c))
        if kind == "ident":
            self.take()
            if val not in R.names:
                raise UnknownVariable(f"{tok[2]}:{tok[3]}: unknown variable {val!r} (known: {', '.join(R.names)})")
            return R.gen(val)
        if val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected a number, variable or '('")


def parse_polynomial(text: str, ring):
    """Parse ``text`` into a polynomial of ``ring``."""
    if not isinstance(text, str):
        return ring.convert(text)
    return _Parser(text, ring).parse()


def parse_many(texts, ring):
    return [parse_polynomial(t, ring) for t in texts]


def variables_in(text: str):
    """Identifiers in order of first appearance."""
    seen = []
    for kind, val, _, _ in tokenize(text):
        if kind == "ident" and val not in seen:
            seen.append(val)
    return seen


def parse_series(text: str, prec: int, field, params=()):
    """Parse an expression in ``t`` (and optional parameters) as a series modulo ``t^prec``."""
    from .polynomials import PolyRing
    from .series import TruncSeries

    ring = PolyRing(field, tuple(params) + ("t",))
    f = parse_polynomial(text, ring)
    if params:
        base = PolyRing(field, tuple(params))
        coeffs = [dict() for _ in range(prec)]
        for e, c in f.terms.items():
            if e[-1] < prec:
                coeffs[e[-1]][e[:-1]] = c
        from .polynomials import Polynomial

        return TruncSeries(base, [Polynomial(base, b) for b in coeffs], prec)
    coeffs = [field.zero] * prec
    for e, c in f.terms.items():
        if e[0] < prec:
            coeffs[e[0]] = c
    return TruncSeries(field, coeffs, prec)
