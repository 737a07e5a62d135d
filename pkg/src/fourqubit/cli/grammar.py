"""Parser for Cartan points written on the command line.

Accepted syntax, e.g. ``(sqrt2, sqrt2 - sqrt3 + i, 1 - 2i, e^{i pi/4})``::

    point  := '(' expr ',' expr ',' expr ',' expr ')'
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' unary)?
    atom   := number | 'i' | 'pi' | 'omega' | 'e' | 'sqrt' atom
            | '(' expr ')' | '{' expr '}'

``omega`` is e^{2 pi i/3} and ``e^x`` is the complex exponential.
"""

from __future__ import annotations

import cmath
import re

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z]+|[√πω])|(?P<op>[-+*/^(){},]))")
_CONSTANTS = {"i": 1j, "j": 1j, "pi": cmath.pi, "π": cmath.pi, "omega": cmath.exp(2j * cmath.pi / 3), "ω": cmath.exp(2j * cmath.pi / 3)}
_ATOM_START = {"num", "name", "(", "{"}


class PointSyntaxError(ValueError):
    def __init__(self, message, text, pos):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos


def tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise PointSyntaxError("unexpected character", text, bad)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op":
            kind = value
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "end of input" if kind == "end" else repr(kind)
            raise PointSyntaxError(f"expected {expected}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            kind = self.peek()[0]
            if kind in ("*", "/"):
                self.take()
                rhs = self.unary()
                if kind == "/":
                    if rhs == 0:
                        raise PointSyntaxError("division by zero", self.text, self.peek()[2])
                    val = val / rhs
                else:
                    val = val * rhs
            elif kind in _ATOM_START:
                val = val * self.power()
            else:
                return val

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        tok = self.peek()
        is_e = tok[0] == "name" and tok[1] == "e"
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            exponent = self.unary()
            return cmath.exp(exponent) if is_e else complex(base) ** exponent
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return complex(float(value))
        if kind in ("(", "{"):
            val = self.expr()
            self.take(")" if kind == "(" else "}")
            return val
        if kind == "name":
            if value in ("sqrt", "√"):
                return cmath.sqrt(self.atom())
            if value == "e":
                return complex(cmath.e)
            if value in _CONSTANTS:
                return _CONSTANTS[value]
            raise PointSyntaxError(f"unknown name {value!r}", self.text, pos)
        raise PointSyntaxError(f"unexpected {value or 'end of input'!r}", self.text, pos)


def parse_expression(text: str) -> complex:
    p = _Parser(text)
    val = p.expr()
    p.take("end")
    return complex(val)


def parse_point(text: str, size: int = 4) -> list:
    """Parse a parenthesized, comma separated tuple of ``size`` complex numbers."""
    p = _Parser(text)
    p.take("(")
    values = [p.expr()]
    while p.peek()[0] == ",":
        p.take()
        values.append(p.expr())
    p.take(")")
    p.take("end")
    if len(values) != size:
        raise PointSyntaxError(f"expected {size} coordinates, got {len(values)}", text, 0)
    return [complex(v) for v in values]
