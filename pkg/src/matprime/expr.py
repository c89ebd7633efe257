"""Recursive-descent parser for rational-function expressions.

Grammar (whitespace insignificant, integers arbitrary precision,
'/' is field division in Q(t)):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' nonneg-integer)?
    base   := 't' | integer | '(' expr ')' | '-' base

Note the exponent applies to the whole base, including an absorbed unary
minus: "-t^2" is (-t)^2 = t^2.  The serializer in `ratfunc` never emits
that shape, so round-trips are unambiguous.
"""

from __future__ import annotations

from matprime.errors import ParseError
from matprime.ratfunc import RatFunc, T

_OPS = set("+-*/^()")


class _Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind  # "int" | "t" | one of +-*/^() | "end"
        self.text = text
        self.line = line
        self.column = column


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(_Token("int", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == "t":
            tokens.append(_Token("t", "t", line, col))
            col += 1
            i += 1
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError("unexpected character", line, col, ch)
    tokens.append(_Token("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.cur
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}", tok.line, tok.column, tok.text or "end of input"
            )
        return self.advance()

    def parse_expr(self) -> RatFunc:
        value = self.parse_term()
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> RatFunc:
        value = self.parse_factor()
        while self.cur.kind in ("*", "/"):
            op = self.advance()
            rhs = self.parse_factor()
            if op.kind == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", op.line, op.column, "/")
                value = value / rhs
        return value

    def parse_factor(self) -> RatFunc:
        value = self.parse_base()
        if self.cur.kind == "^":
            self.advance()
            exp = self.expect("int")
            value = value ** int(exp.text)
        return value

    def parse_base(self) -> RatFunc:
        tok = self.cur
        if tok.kind == "t":
            self.advance()
            return T
        if tok.kind == "int":
            self.advance()
            return RatFunc.from_const(int(tok.text))
        if tok.kind == "(":
            self.advance()
            value = self.parse_expr()
            self.expect(")")
            return value
        if tok.kind == "-":
            self.advance()
            return -self.parse_base()
        raise ParseError(
            "expected 't', an integer, '(' or '-'",
            tok.line,
            tok.column,
            tok.text or "end of input",
        )


def parse_ratfunc(source: str) -> RatFunc:
    """Parse an expression string into a canonical RatFunc.

    Raises ParseError with line/column and the offending token.
    """
    parser = _Parser(_tokenize(source))
    value = parser.parse_expr()
    end = parser.cur
    if end.kind != "end":
        raise ParseError("trailing input", end.line, end.column, end.text)
    return value


def parse_ratfunc_vector(sources) -> tuple[RatFunc, ...]:
    return tuple(parse_ratfunc(s) for s in sources)


__all__ = ["parse_ratfunc", "parse_ratfunc_vector"]
