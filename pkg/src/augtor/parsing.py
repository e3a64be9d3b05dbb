"""Polynomial grammar and presentation-matrix files.

Grammar (whitespace ignored)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := power (['*'] power)*        implicit product before 't' or '('
    power  := atom ['^' ['-' | '+'] INT]  negative exponents only on t-monomials
    atom   := INT | 't' | '(' expr ')'
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import LoadError, ParseError
from .linalg import PresentationMatrix
from .poly import T, LaurentPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        else:
            ch = m.group(2)
            if ch not in "t+-*^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {what}", tok[2])
        return self.take()

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        out = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> LaurentPoly:
        out = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                out = out * self.power()
            elif kind in ("t", "("):
                out = out * self.power()
            else:
                return out

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        self.take()
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        tok = self.expect("int", "integer exponent")
        e = sign * tok[1]
        if e >= 0:
            return base ** e
        if len(base.coeffs) != 1 or abs(base.coeffs[0]) != 1:
            raise ParseError("negative exponent on a non-unit", tok[2])
        return LaurentPoly((base.coeffs[0] ** -e,), base.min_exp * e)

    def atom(self) -> LaurentPoly:
        tok = self.peek()
        if tok[0] == "int":
            self.take()
            return LaurentPoly.constant(tok[1])
        if tok[0] == "t":
            self.take()
            return T
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            self.expect(")", "')'")
            return inner
        raise ParseError("expected a number, 't' or '('", tok[2])


def parse_poly(text: str) -> LaurentPoly:
    """Parse an integer Laurent polynomial in t, e.g. "t^2-3t+1" or "t^-1 - 3 + t"."""
    if not isinstance(text, str):
        raise ParseError("polynomial text must be a string", 0)
    p = _Parser(text)
    out = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return out


def parse_entry(value, row: int, col: int) -> LaurentPoly:
    if isinstance(value, bool):
        raise LoadError(f"entry ({row}, {col}): booleans are not polynomials")
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    if isinstance(value, str):
        try:
            return parse_poly(value)
        except ParseError as exc:
            raise LoadError(f"entry ({row}, {col}): {exc}") from exc
    raise LoadError(f"entry ({row}, {col}): expected a string or integer, got {type(value).__name__}")


def presentation_from_json(data) -> PresentationMatrix:
    if not isinstance(data, dict) or "entries" not in data:
        raise LoadError("expected a JSON object with an 'entries' array")
    entries = data["entries"]
    if not isinstance(entries, list) or not entries:
        raise LoadError("'entries' must be a nonempty array of rows")
    width = None
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or not row:
            raise LoadError(f"row {i}: expected a nonempty array")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise LoadError(f"row {i}: has {len(row)} entries, row 0 has {width}")
        rows.append([parse_entry(v, i, j) for j, v in enumerate(row)])
    for key, actual in (("rows", len(rows)), ("cols", width)):
        if key in data:
            declared = data[key]
            if isinstance(declared, bool) or not isinstance(declared, int) or declared != actual:
                raise LoadError(f"declared {key} = {declared!r} but entries give {actual}")
    return PresentationMatrix(rows)


def load_presentation(path) -> PresentationMatrix:
    """Read a presentation matrix from a UTF-8 JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return presentation_from_json(data)
