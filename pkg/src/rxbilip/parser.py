"""Recursive-descent parser for the polynomial grammar.

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | NUMBER '/' NUMBER | IDENT | 'conj' '(' IDENT ')' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.  Juxtaposition
(``2x``, ``x y``) is rejected: every product needs an explicit ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import QQ, Poly, VarContext


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))


@dataclass(frozen=True)
class Token:
    kind: str  # NUM IDENT OP LPAREN RPAREN END
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|/)|(\()|(\)))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            k = pos
            while k < len(text) and text[k].isspace():
                k += 1
            raise ParseError(f"unexpected character {text[k]!r}", k, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(Token("NUM", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(Token("IDENT", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(Token("OP", m.group(3), start))
        elif m.group(4) is not None:
            tokens.append(Token("LPAREN", "(", start))
        else:
            tokens.append(Token("RPAREN", ")", start))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.text = text
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def expect(self, kind: str, value: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            got = tok.value or "end of input"
            self.fail(f"expected {want!r}, found {got!r}")
        return self.advance()

    def parse(self) -> Poly:
        if self.peek().kind == "END":
            self.fail("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            if tok.kind in ("NUM", "IDENT", "LPAREN"):
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail(f"unexpected {tok.value!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.advance().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "OP" and tok.value == "*":
                self.advance()
                p = p * self.unary()
            elif tok.kind in ("NUM", "IDENT", "LPAREN"):
                self.fail("implicit multiplication is not allowed; use '*'")
            else:
                return p

    def unary(self) -> Poly:
        tok = self.peek()
        if tok.kind == "OP" and tok.value == "-":
            self.advance()
            return -self.unary()
        if tok.kind == "OP" and tok.value == "+":
            self.fail("unary plus is not part of the grammar")
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "OP" and tok.value == "^":
            self.advance()
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.value == "-":
                self.fail("negative exponent")
            exp = self.expect("NUM")
            after = self.peek()
            if after.kind == "OP" and after.value == "^":
                self.fail("chained exponents are ambiguous; add parentheses")
            return base ** int(exp.value)
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        ctx = self.ctx
        if tok.kind == "NUM":
            self.advance()
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.value == "/":
                self.advance()
                den = self.expect("NUM")
                if int(den.value) == 0:
                    self.fail("division by zero", den)
                return Poly.const(ctx, QQ(int(tok.value), int(den.value)))
            return Poly.const(ctx, int(tok.value))
        if tok.kind == "IDENT":
            self.advance()
            if tok.value == "conj":
                self.expect("LPAREN")
                name = self.expect("IDENT")
                self.expect("RPAREN")
                if not ctx.has_conjugates:
                    self.fail("conjugate variables are not enabled in this context", name)
                if name.value not in ctx.names:
                    self.fail(f"conj() needs a holomorphic variable, got {name.value!r}", name)
                return Poly.slot(ctx, ctx.conj_index(ctx.index(name.value)))
            if tok.value in ctx.names:
                return Poly.slot(ctx, ctx.index(tok.value))
            if ctx.has_parameter and tok.value == ctx.parameter:
                return Poly.slot(ctx, ctx.t_index)
            self.fail(f"unknown identifier {tok.value!r}", tok)
        if tok.kind == "LPAREN":
            self.advance()
            p = self.expr()
            self.expect("RPAREN")
            return p
        if tok.kind == "OP" and tok.value == "/":
            self.fail("'/' is only allowed inside a rational literal p/q")
        if tok.kind == "END":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok.value!r}")


def parse_poly(text: str, ctx: VarContext) -> Poly:
    """Parse ``text`` into a canonical ``Poly`` over ``ctx``."""
    return _Parser(text, ctx).parse()
