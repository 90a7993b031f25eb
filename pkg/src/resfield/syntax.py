"""Tokenizer and arithmetic-expression reader shared by the literal grammars.

One precedence-climbing reader serves every concrete syntax in the package:
field scalars (``3/4``, ``1+2i``), polynomials in ``X``, series in ``t``,
rational functions in ``X`` over series, and integer polynomials in
``X1..Xm, T``.  What differs is the *algebra* that turns atoms into values;
``+ - * /`` and integer powers are then ordinary Python operators on those
values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<imag>\d+i(?![A-Za-z0-9_]))
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|!=|[-+*/^(),:.=<~&|\[\]])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str       # 'num' | 'imag' | 'ident' | 'op' | 'eof'
    text: str
    pos: int


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f'unexpected character {text[pos]!r}', pos, text)
        kind = m.lastgroup
        if kind != 'ws':
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token('eof', '', len(text)))
    return out


class TokenStream:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def lookahead(self, k=1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != 'eof':
            self.i += 1
        return tok

    def at(self, text) -> bool:
        tok = self.peek
        return tok.kind in ('op', 'ident') and tok.text == text

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def expect(self, text) -> Token:
        tok = self.peek
        if not self.at(text):
            shown = tok.text or 'end of input'
            raise ParseError(f'expected {text!r}, found {shown!r}', tok.pos, self.text)
        return self.next()

    def error(self, message, tok=None):
        tok = tok or self.peek
        return ParseError(message, tok.pos, self.text)


def parse_exponent(ts: TokenStream) -> Fraction:
    """``^`` operand: ``-2``, ``3``, ``(1/2)`` or ``(-3/4)``."""
    neg = ts.accept('-') is not None
    if ts.accept('('):
        inner_neg = ts.accept('-') is not None
        tok = ts.next()
        if tok.kind != 'num':
            raise ts.error('expected an integer exponent', tok)
        q = Fraction(int(tok.text))
        if ts.accept('/'):
            tok = ts.next()
            if tok.kind != 'num' or int(tok.text) == 0:
                raise ts.error('expected a nonzero exponent denominator', tok)
            q /= int(tok.text)
        ts.expect(')')
        if inner_neg:
            q = -q
    else:
        tok = ts.next()
        if tok.kind != 'num':
            raise ts.error('expected an integer exponent', tok)
        q = Fraction(int(tok.text))
    return -q if neg else q


class Algebra:
    """Turns atoms into values.  Subclasses override the hooks they support."""

    def const(self, n: int):
        raise NotImplementedError

    def imag(self, tok):
        raise ParseError('the imaginary unit needs --field Qi', tok.pos)

    def name(self, tok):
        raise ParseError(f'unknown symbol {tok.text!r}', tok.pos)

    def power(self, base, q: Fraction, base_tok, tok):
        if q.denominator != 1:
            raise ParseError('fractional exponents are only allowed on t', tok.pos)
        return base ** int(q)


class ExpressionReader:
    def __init__(self, text, algebra: Algebra):
        self.ts = TokenStream(text)
        self.alg = algebra

    def read(self):
        value = self.expr()
        if self.ts.peek.kind != 'eof':
            raise self.ts.error(f'unexpected {self.ts.peek.text!r}')
        return value

    def expr(self):
        value = self.term()
        while self.ts.at('+') or self.ts.at('-'):
            op = self.ts.next()
            rhs = self.term()
            value = self._apply(op, value, rhs)
        return value

    def term(self):
        value = self.unary()
        while self.ts.at('*') or self.ts.at('/'):
            op = self.ts.next()
            rhs = self.unary()
            value = self._apply(op, value, rhs)
        return value

    def unary(self):
        if self.ts.at('-'):
            op = self.ts.next()
            value = self.unary()
            return self._wrap(op, lambda: -value)
        if self.ts.accept('+'):
            return self.unary()
        return self.power()

    def power(self):
        base_tok = self.ts.peek
        base = self.atom()
        if self.ts.at('^'):
            op = self.ts.next()
            q = parse_exponent(self.ts)
            return self._wrap(op, lambda: self.alg.power(base, q, base_tok, op))
        return base

    def atom(self):
        tok = self.ts.next()
        if tok.kind == 'num':
            return self.alg.const(int(tok.text))
        if tok.kind == 'imag':
            return self.alg.const(int(tok.text[:-1])) * self.alg.imag(tok)
        if tok.kind == 'ident':
            if tok.text == 'i':
                return self.alg.imag(tok)
            return self.alg.name(tok)
        if tok.kind == 'op' and tok.text == '(':
            value = self.expr()
            self.ts.expect(')')
            return value
        raise self.ts.error(f'unexpected {tok.text or "end of input"!r}', tok)

    def _apply(self, op, a, b):
        fn = {'+': lambda: a + b, '-': lambda: a - b, '*': lambda: a * b, '/': lambda: a / b}[op.text]
        return self._wrap(op, fn)

    def _wrap(self, tok, fn):
        try:
            return fn()
        except ParseError:
            raise
        except ZeroDivisionError:
            raise
        except (ValueError, TypeError, ArithmeticError) as exc:
            raise ParseError(str(exc), tok.pos, self.ts.text) from exc


# concrete algebras -----------------------------------------------------------

class ScalarAlgebra(Algebra):
    def __init__(self, field):
        self.field = field

    def const(self, n):
        return self.field(n)

    def imag(self, tok):
        from .fields import GaussianRationals
        if not isinstance(self.field, GaussianRationals):
            return super().imag(tok)
        return self.field.elem(self.field.i)


class PolyAlgebra(ScalarAlgebra):
    def __init__(self, field, var='X'):
        super().__init__(field)
        self.var = var

    def const(self, n):
        from .poly import Poly
        return Poly.constant(self.field, self.field.from_int(n))

    def imag(self, tok):
        from .poly import Poly
        return Poly.constant(self.field, super().imag(tok).value)

    def name(self, tok):
        from .poly import Poly
        if tok.text == self.var:
            return Poly.x(self.field)
        return super().name(tok)


class SeriesAlgebra(ScalarAlgebra):
    def const(self, n):
        from .series import Series
        return Series.const(self.field, self.field.from_int(n))

    def imag(self, tok):
        from .series import Series
        return Series.const(self.field, super().imag(tok).value)

    def name(self, tok):
        from .series import Series
        if tok.text == 't':
            return Series.t_power(self.field, 1)
        return super().name(tok)

    def power(self, base, q, base_tok, tok):
        from .series import Series
        if base_tok.kind == 'ident' and base_tok.text == 't':
            return Series.t_power(self.field, q)
        return super().power(base, q, base_tok, tok)


def parse_scalar(field, text):
    """Raw field value of a scalar literal such as ``-3/4`` or ``1+2i``."""
    return ExpressionReader(text, ScalarAlgebra(field)).read().value


def parse_field_elem(field, text):
    return ExpressionReader(text, ScalarAlgebra(field)).read()


def parse_poly(field, text, var='X'):
    return ExpressionReader(text, PolyAlgebra(field, var)).read()


def parse_series(field, text):
    return ExpressionReader(text, SeriesAlgebra(field)).read()
