"""Valuations on K(X) extending the t-adic valuation of the series field K.

Two extensions are computed: the Gauss valuation, in which X is a unit whose
residue is transcendental over k, and the infinitesimal valuation, in which
X is positive but smaller than every element of the value group of K.
Elements of K(X) are quotients of Laurent polynomials in X with series
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorMismatch, DivisionByZero, IndeterminateResidue, NotInValuationRing
from .fields import Field, FieldElem, GaussianRational
from .poly import Poly
from .series import Series
from .syntax import ExpressionReader, SeriesAlgebra


def _laurent(field, terms):
    """Drop zero coefficients; return a sorted tuple of (exponent, Series)."""
    return tuple(sorted((i, c) for i, c in terms.items() if c))


def _mul_laurent(a, b):
    out = {}
    for i, x in a:
        for j, y in b:
            k = i + j
            out[k] = out[k] + x * y if k in out else x * y
    return out


def _add_laurent(a, b):
    out = dict(a)
    for j, y in b:
        out[j] = out[j] + y if j in out else y
    return out


class ExtRatFunc:
    """num(X)/den(X), both Laurent polynomials over K; den has lowest X-exponent 0."""

    __slots__ = ('field', 'num', 'den')

    def __init__(self, field: Field, num, den=None):
        if den is None:
            den = {0: Series.const(field, field.one)}
        num = _laurent(field, dict(num))
        den = _laurent(field, dict(den))
        if not den:
            raise DivisionByZero('zero denominator in K(X)')
        shift = den[0][0]
        if num:
            num = tuple((i - shift, c) for i, c in num)
        den = tuple((i - shift, c) for i, c in den)
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    def __setattr__(self, name, value):
        raise AttributeError('ExtRatFunc is immutable')

    @classmethod
    def X(cls, field, power=1):
        return cls(field, {power: Series.const(field, field.one)})

    @classmethod
    def from_series(cls, a: Series):
        return cls(a.field, {0: a})

    @classmethod
    def polynomial(cls, field, coeffs):
        """sum coeffs[i] X^i for a list or dict of Series."""
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        return cls(field, dict(items))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, ExtRatFunc):
            if other.field != self.field:
                raise DescriptorMismatch(f'{self.field} vs {other.field}')
            return other
        if isinstance(other, Series):
            if other.field != self.field:
                raise DescriptorMismatch(f'{self.field} vs {other.field}')
            return ExtRatFunc.from_series(other)
        if isinstance(other, FieldElem):
            return ExtRatFunc.from_series(Series.const(self.field, self.field.convert(other)))
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return ExtRatFunc.from_series(Series.const(self.field, self.field.convert(other)))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return ExtRatFunc(self.field, _add_laurent(self.num, other.num), dict(self.den))
        num = _add_laurent(tuple(_mul_laurent(self.num, other.den).items()),
                           tuple(_mul_laurent(other.num, self.den).items()))
        return ExtRatFunc(self.field, num, _mul_laurent(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return ExtRatFunc(self.field, {i: -c for i, c in self.num}, dict(self.den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtRatFunc(self.field, _mul_laurent(self.num, other.num), _mul_laurent(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero('inverse of 0 in K(X)')
        return ExtRatFunc(self.field, dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ExtRatFunc(self.field, {0: Series.const(self.field, self.field.one)})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        """Equality as elements of K(X) (cross-multiplication)."""
        if not isinstance(other, ExtRatFunc):
            return NotImplemented
        if self.field != other.field:
            return False
        lhs = _laurent(self.field, _mul_laurent(self.num, other.den))
        rhs = _laurent(self.field, _mul_laurent(other.num, self.den))
        return lhs == rhs

    __hash__ = None

    def format(self):
        top = _format_laurent(self.num)
        if self.den == ((0, Series.const(self.field, self.field.one)),):
            return top
        return f'({top})/({_format_laurent(self.den)})'

    __str__ = format

    def __repr__(self):
        return f'ExtRatFunc({self.format()!r})'


def _format_laurent(terms):
    if not terms:
        return '0'
    parts = []
    for i, c in reversed(terms):
        coef = c.format()
        compound = coef.startswith('-') or '/' in coef
        xs = '' if i == 0 else ('X' if i == 1 else f'X^{i}')
        if not xs:
            parts.append(f'({coef})' if compound else coef)
        elif coef == '1':
            parts.append(xs)
        elif compound or ' + ' in coef or ' - ' in coef:
            parts.append(f'({coef})*{xs}')
        else:
            parts.append(f'{coef}*{xs}')
    return ' + '.join(parts)


class ExtAlgebra(SeriesAlgebra):
    def const(self, n):
        return ExtRatFunc.from_series(super().const(n))

    def imag(self, tok):
        return ExtRatFunc.from_series(super().imag(tok))

    def name(self, tok):
        if tok.text == 'X':
            return ExtRatFunc.X(self.field)
        return ExtRatFunc.from_series(super().name(tok))

    def power(self, base, q, base_tok, tok):
        if base_tok.kind == 'ident' and base_tok.text == 't':
            return ExtRatFunc.from_series(Series.t_power(self.field, q))
        return super(SeriesAlgebra, self).power(base, q, base_tok, tok)


def parse_ext(field, text) -> ExtRatFunc:
    value = ExpressionReader(text, ExtAlgebra(field)).read()
    if isinstance(value, Series):
        value = ExtRatFunc.from_series(value)
    return value


# Gauss valuation --------------------------------------------------------

def _gauss_laurent(terms):
    return min(c.valuation() for _, c in terms)


def gauss_val(F: ExtRatFunc):
    """w(sum a_i X^i) = min v(a_i), extended to quotients."""
    if not F.num:
        raise DivisionByZero('Gauss valuation of 0')
    return _gauss_laurent(F.num) - _gauss_laurent(F.den)


@dataclass(frozen=True)
class KRatFunc:
    """Reduced rational function over k in the residue variable x."""

    num: Poly
    den: Poly

    @classmethod
    def make(cls, num: Poly, den: Poly):
        if not den:
            raise IndeterminateResidue('residue denominator vanished')
        if not num:
            return cls(num, Poly.constant(den.field, den.field.one))
        g = num.gcd(den)
        num, den = num // g, den // g
        lc = den.lc()
        inv = den.field.inv(lc)
        return cls(num.scale(inv), den.scale(inv))

    def __mul__(self, other):
        return KRatFunc.make(self.num * other.num, self.den * other.den)

    def format(self):
        top = self.num.format('x')
        if self.den.degree == 0:
            return top
        if len([c for c in self.num.coeffs if c]) > 1:
            top = f'({top})'
        return f'{top}/({self.den.format("x")})'

    __str__ = format


def _residue_laurent(terms, shift_val, field):
    """Coefficient-wise residue of t^-shift_val * sum a_i X^i, as {i: raw}."""
    scale = Series.t_power(field, -shift_val)
    return {i: (c * scale).coeff_raw(0) for i, c in terms}


def gauss_residue(F: ExtRatFunc) -> KRatFunc:
    if not F.num:
        raise NotInValuationRing('the residue of 0 is 0 but 0 has no Gauss value')
    if gauss_val(F) != 0:
        raise NotInValuationRing(f'Gauss value of {F} is {gauss_val(F)}, not 0')
    field = F.field
    top = _residue_laurent(F.num, _gauss_laurent(F.num), field)
    bottom = _residue_laurent(F.den, _gauss_laurent(F.den), field)
    low = min(min(top), min(bottom))
    num = Poly(field, [top.get(i, field.zero) for i in range(low, max(top) + 1)])
    den = Poly(field, [bottom.get(i, field.zero) for i in range(low, max(bottom) + 1)])
    return KRatFunc.make(num, den)


# infinitesimal valuation -----------------------------------------------

@dataclass(frozen=True, order=True)
class LexValue:
    """x_degree * gamma + base in Z*gamma (+)_lex Gamma, gamma dominant and positive."""

    x_degree: int
    base: Fraction

    def __add__(self, other):
        return LexValue(self.x_degree + other.x_degree, self.base + other.base)

    def __sub__(self, other):
        return LexValue(self.x_degree - other.x_degree, self.base - other.base)

    def __neg__(self):
        return LexValue(-self.x_degree, -self.base)

    def __str__(self):
        return f'({self.x_degree}, {self.base})'


def _inf_laurent(terms):
    return min(LexValue(i, c.valuation()) for i, c in terms)


def infinitesimal_val(F: ExtRatFunc) -> LexValue:
    if not F.num:
        raise DivisionByZero('infinitesimal valuation of 0')
    return _inf_laurent(F.num) - _inf_laurent(F.den)
