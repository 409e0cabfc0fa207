"""Expression language shared by the CLI and every ring type.

Grammar, loosest binding first::

    sum     := product (('+' | '-') product)*
    product := unary (('*' | '/') unary)*          # left-assoc, order kept
    unary   := '-' unary | power
    power   := atom ('^' exponent)?
    atom    := NUMBER | IDENT | '(' sum ')'

Juxtaposition is rejected: ``x d`` is a syntax error, write ``x*d``.
Evaluation delegates every operation to the target ring, so input that is
not in normal form (``d*x``) is normalized by the ring's multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExponentOverflow, ExprSyntaxError, ParseError, UnknownSymbol

MAX_EXPONENT = 2 ** 32 - 1

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>\*\*|[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class Num:
    value: Fraction
    offset: int


@dataclass(frozen=True)
class Sym:
    name: str
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: object
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    offset: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    offset: int


def tokenize(src):
    orig = src
    # one-character substitutions keep positions, offsets still refer to ``orig``
    src = src.replace("−", "-").replace("∂", "d")
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", _byte_offset(orig, pos))
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            tokens.append(Token("op" if kind == "op" else kind, "^" if text == "**" else text,
                                _byte_offset(orig, pos)))
        pos = m.end()
    tokens.append(Token("end", "", _byte_offset(orig, len(src))))
    return tokens


def _byte_offset(src, pos):
    return len(src[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, src):
        self.tokens = tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.take()
        if tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.offset)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise ExprSyntaxError("empty expression", 0)
        node = self.sum()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind in ("num", "ident") or tok.text == "(":
                raise ExprSyntaxError("juxtaposition is not allowed; use '*'", tok.offset)
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.offset)
        return node

    def sum(self):
        node = self.product()
        while self.peek().text in ("+", "-"):
            tok = self.take()
            node = BinOp(tok.text, node, self.product(), tok.offset)
        return node

    def product(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            node = BinOp(tok.text, node, self.unary(), tok.offset)
        return node

    def unary(self):
        tok = self.peek()
        if tok.text == "-":
            self.take()
            return Neg(self.unary(), tok.offset)
        if tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().text == "^":
            tok = self.take()
            node = Pow(node, self.exponent(), tok.offset)
            if self.peek().text == "^":
                raise ExprSyntaxError("chained powers need parentheses", self.peek().offset)
        return node

    def exponent(self):
        tok = self.take()
        if tok.text == "(":
            value = self.exponent()
            self.expect(")")
            return value
        if tok.text == "-":
            raise ExprSyntaxError("negative exponents are not allowed", tok.offset)
        if tok.kind != "num" or "." in tok.text:
            raise ExprSyntaxError("exponent must be a nonnegative integer literal", tok.offset)
        value = int(tok.text)
        if value > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {value} exceeds {MAX_EXPONENT}", tok.offset)
        return value

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return Num(Fraction(tok.text), tok.offset)
        if tok.kind == "ident":
            return Sym(tok.text, tok.offset)
        if tok.text == "(":
            node = self.sum()
            self.expect(")")
            return node
        if tok.kind == "end":
            raise ExprSyntaxError("unexpected end of input", tok.offset)
        raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.offset)


def parse_ast(src):
    return _Parser(src).parse()


def evaluate(node, scalar, symbol, divide):
    """Fold an AST. ``scalar(Fraction)``, ``symbol(name, offset)`` and
    ``divide(a, b, offset)`` produce ring elements; ``+ - *`` and integer
    powers are taken from the elements themselves."""
    def ev(n):
        if isinstance(n, Num):
            return scalar(n.value)
        if isinstance(n, Sym):
            return symbol(n.name, n.offset)
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        left, right = ev(n.left), ev(n.right)
        if n.op == "+":
            return left + right
        if n.op == "-":
            return left - right
        if n.op == "*":
            return left * right
        return divide(left, right, n.offset)
    return ev(node)


def _field_symbol(field, name, offset):
    from .fields import QQ_I, RationalFunctionField
    if isinstance(field, RationalFunctionField):
        if name == field.var:
            return field.gen
        return field(_field_symbol(field.base, name, offset))
    if field == QQ_I and name == "i":
        return QQ_I.i
    raise UnknownSymbol(f"unknown symbol {name!r}", offset)


def evaluate_field_expression(src, field):
    """Parse a coefficient expression such as ``(x+1)/x`` into ``field``."""
    def divide(a, b, offset):
        if not b:
            raise ParseError("division by zero", offset)
        return a / b
    value = evaluate(parse_ast(src), field, lambda n, o: _field_symbol(field, n, o), divide)
    return field(value)


# ---------------------------------------------------------------- printing

def coeff_text(field, c):
    """Coefficient as an expression fragment, negative sign left in front."""
    from .fields import QQ_I, RationalFunctionField
    if field == QQ_I:
        if c.imag == 0:
            return field.format(c)
        if c.real == 0:
            mag = abs(c.imag)
            body = "i" if mag == 1 else f"{field.format(type(c)(mag))}*i"
            return ("-" if c.imag < 0 else "") + body
        text = field.format(c).replace("i", "*i")
        text = re.sub(r"([+-])\*i$", r"\1i", text)
        return f"({text})"
    text = field.format(c)
    if isinstance(field, RationalFunctionField):
        if re.fullmatch(r"-?\d+(/\d+)?|" + re.escape(field.var), text):
            return text
        return f"({text})"
    return text


def format_sum(field, terms):
    """Render ``[(coeff, monomial_text), ...]`` in the given order.

    ``monomial_text`` is ``""`` for the constant term. Output follows the
    conventions ``x*d + 1`` and ``-1/2*x^2``.
    """
    parts = []
    one = field.one
    for c, mono in terms:
        if not c:
            continue
        neg = False
        if mono and c == one:
            text = mono
        elif mono and c == -one:
            text, neg = mono, True
        else:
            text = coeff_text(field, c)
            if text.startswith("-"):
                neg, text = True, text[1:]
            if mono:
                text = f"{text}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append(("- " if neg else "+ ") + text)
    return " ".join(parts) if parts else "0"


def monomial_text(names, exps):
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return "*".join(out)
