"""The rational Puiseux subfield of k((t^Q)).

Every nonzero element is stored canonically as

    t^(m/e) * u(s) / w(s),     s = t^(1/e),

with u(0) != 0, w(0) = 1, gcd(u, w) = 1 and e minimal.  Under
these constraints the representation is unique, so equality is structural and
``v(a) = m/e`` can be read off directly.  Coefficients of the underlying
power series are produced on demand from the recurrence w * c = u.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd

from .errors import DescriptorMismatch, DivisionByZero, NotInfinitesimal, NotInValuationRing
from .fields import Field, FieldElem, GaussianRational
from .poly import Poly, format_terms
from .values import INF


class Series:
    __slots__ = ('field', 'e', 'm', 'num', 'den')

    def __init__(self, field: Field, e: int, m: int, num, den):
        # trusted constructor: callers pass canonical data (see ``_make``)
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'e', e)
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'num', tuple(num))
        object.__setattr__(self, 'den', tuple(den))

    def __setattr__(self, name, value):
        raise AttributeError('Series is immutable')

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, 1, 0, (), (field.one,))

    @classmethod
    def const(cls, field, c):
        """The constant series with raw value ``c``."""
        if not c:
            return cls.zero(field)
        return cls(field, 1, 0, (c,), (field.one,))

    @classmethod
    def t_power(cls, field, q=1):
        q = Fraction(q)
        return cls(field, q.denominator, q.numerator, (field.one,), (field.one,))

    @classmethod
    def from_terms(cls, field, terms):
        """Finite sum from ``{exponent: raw coefficient}``."""
        out = cls.zero(field)
        for q, c in terms.items():
            if c:
                out = out + cls.t_power(field, q) * cls.const(field, c)
        return out

    @classmethod
    def from_poly_in_tinv(cls, f: Poly):
        """f(t^-1) for a polynomial f over k."""
        if not f:
            return cls.zero(f.field)
        n = len(f.coeffs) - 1
        return _make(f.field, 1, -n, Poly(f.field, reversed(f.coeffs)), Poly.constant(f.field, f.field.one))

    # structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def valuation(self):
        if not self.num:
            return INF
        return Fraction(self.m, self.e)

    @property
    def unit_num(self) -> Poly:
        return Poly(self.field, self.num)

    @property
    def unit_den(self) -> Poly:
        return Poly(self.field, self.den)

    def is_constant(self) -> bool:
        return not self.num or (self.m == 0 and len(self.num) == 1 and self.den == (self.field.one,))

    def is_polynomial(self) -> bool:
        """True when the denominator is 1, i.e. a finite sum of monomials."""
        return self.den == (self.field.one,)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.field == other.field and self.e == other.e and self.m == other.m
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.field, self.e, self.m, self.num, self.den))

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Series):
            if other.field != self.field:
                raise DescriptorMismatch(f'{self.field} vs {other.field}')
            return other
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise DescriptorMismatch(f'{self.field} vs {other.field}')
            return Series.const(self.field, other.value)
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return Series.const(self.field, self.field.convert(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        e, (m1, u1, w1), (m2, u2, w2) = _align(self, other)
        m = min(m1, m2)
        if w1 == w2:
            return _make(self.field, e, m, _shift(u1, m1 - m) + _shift(u2, m2 - m), w1)
        N = _shift(u1 * w2, m1 - m) + _shift(u2 * w1, m2 - m)
        return _make(self.field, e, m, N, w1 * w2)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Series(F, self.e, self.m, [F.neg(c) for c in self.num], self.den)

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
        if not self.num or not other.num:
            return Series.zero(self.field)
        e, (m1, u1, w1), (m2, u2, w2) = _align(self, other)
        return _make(self.field, e, m1 + m2, u1 * u2, w1 * w2)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero('inverse of the zero series')
        return _make(self.field, self.e, -self.m, self.unit_den, self.unit_num)

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
        if not isinstance(n, int):
            raise TypeError('series powers must be integers; use Series.t_power for t^q')
        if n < 0:
            return self.inverse() ** (-n)
        result = Series.const(self.field, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # coefficients -------------------------------------------------------
    def expand(self, n: int):
        """Raw coefficients c_0..c_n of u(s)/w(s) as a power series in s."""
        F = self.field
        u, w = self.num, self.den
        if n < 0:
            return []
        if len(w) == 1:
            return [u[j] if j < len(u) else F.zero for j in range(n + 1)]
        inv_w0 = F.inv(w[0])
        out = []
        for j in range(n + 1):
            acc = u[j] if j < len(u) else F.zero
            for i in range(1, min(j, len(w) - 1) + 1):
                if w[i]:
                    acc = F.sub(acc, F.mul(w[i], out[j - i]))
            out.append(F.mul(acc, inv_w0))
        return out

    def coeff_raw(self, q):
        q = Fraction(q)
        if not self.num:
            return self.field.zero
        idx = q * self.e - self.m
        if idx.denominator != 1 or idx < 0:
            return self.field.zero
        idx = int(idx)
        return self.expand(idx)[idx]

    def format(self) -> str:
        F = self.field
        if not self.num:
            return '0'
        top = format_terms(F, [(_t_text(Fraction(self.m + j, self.e)), c)
                               for j, c in enumerate(self.num) if c])
        if self.is_polynomial():
            return top
        bottom = format_terms(F, [(_t_text(Fraction(j, self.e)), c)
                                  for j, c in enumerate(self.den) if c])
        nterms = sum(1 for c in self.num if c)
        if nterms > 1:
            top = f'({top})'
        return f'{top}/({bottom})'

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f'Series({self.field}, {self.format()!r})'


def _t_text(q: Fraction) -> str:
    if q == 0:
        return ''
    if q == 1:
        return 't'
    if q.denominator == 1:
        return f't^{q.numerator}'
    return f't^({q})'


def _shift(f: Poly, k: int) -> Poly:
    if k == 0 or not f:
        return f
    return Poly(f.field, (f.field.zero,) * k + f.coeffs)


def _inflate(coeffs, k, zero):
    if k == 1:
        return coeffs
    out = [zero] * ((len(coeffs) - 1) * k + 1) if coeffs else []
    for i, c in enumerate(coeffs):
        out[i * k] = c
    return out


def _align(a: Series, b: Series):
    F = a.field
    e = a.e * b.e // gcd(a.e, b.e)

    def parts(x):
        k = e // x.e
        return (x.m * k, Poly(F, _inflate(x.num, k, F.zero)), Poly(F, _inflate(x.den, k, F.zero)))

    return e, parts(a), parts(b)


def _make(F, e, m, N: Poly, D: Poly) -> Series:
    """Canonicalize t^(m/e) N(s)/D(s): strip s-powers, cancel the gcd, scale so D(0) = 1."""
    if not N:
        return Series.zero(F)
    if not D:
        raise DivisionByZero('zero denominator')
    kn = next(i for i, c in enumerate(N.coeffs) if c)
    kd = next(i for i, c in enumerate(D.coeffs) if c)
    m += kn - kd
    N = Poly(F, N.coeffs[kn:])
    D = Poly(F, D.coeffs[kd:])
    if len(D.coeffs) > 1:
        g = N.gcd(D)
        if len(g.coeffs) > 1:
            N = N // g
            D = D // g
    lc_inv = F.inv(D.coeffs[0])
    num = [F.mul(c, lc_inv) for c in N.coeffs]
    den = [F.mul(c, lc_inv) for c in D.coeffs]
    g = gcd(e, m)
    if g > 1:
        for coeffs in (num, den):
            for i, c in enumerate(coeffs):
                if c:
                    g = gcd(g, i)
                    if g == 1:
                        break
            if g == 1:
                break
    if g > 1:
        e //= g
        m //= g
        num = num[::g]
        den = den[::g]
    return Series(F, e, m, num, den)


# functional surface -----------------------------------------------------

def _same(a, b):
    if a.field != b.field:
        raise DescriptorMismatch(f'{a.field} vs {b.field}')


def series_add(a: Series, b: Series) -> Series:
    _same(a, b)
    return a + b


def series_mul(a: Series, b: Series) -> Series:
    _same(a, b)
    return a * b


def series_neg(a: Series) -> Series:
    return -a


def series_inv(a: Series) -> Series:
    return a.inverse()


def val(a: Series):
    """Valuation: ``INF`` for zero, else the exact rational m/e."""
    return a.valuation()


def coeff_at(a: Series, q) -> FieldElem:
    return FieldElem(a.field, a.coeff_raw(q))


def residue_pi(a: Series) -> FieldElem:
    if a.valuation() < 0:
        raise NotInValuationRing(f'v({a}) < 0')
    return coeff_at(a, 0)


def total_res(a: Series) -> FieldElem:
    """The constant coefficient c_0, defined on all of K."""
    return coeff_at(a, 0)


def res0(a: Series) -> FieldElem:
    """Complex residue at 0: the coefficient of t^-1, i.e. res(t*a)."""
    return coeff_at(a, -1)


def lift_iota(alpha: FieldElem) -> Series:
    return Series.const(alpha.field, alpha.value)


def extract_pa(a: Series) -> Poly:
    """p_a(X) = sum over n >= 0 of c_{-n} X^n."""
    F = a.field
    if not a.num or a.m > 0:
        return Poly(F)
    top = -a.m                          # s-index of exponent 0
    n_max = -a.m // a.e
    c = a.expand(top)
    return Poly(F, [c[top - n * a.e] for n in range(n_max + 1)])


def truncated_expansion(a: Series, up_to):
    """All (q, c_q) with v(a) <= q <= up_to and c_q != 0, ascending."""
    if not a.num:
        return []
    up_to = Fraction(up_to)
    n = floor(up_to * a.e) - a.m
    return [(Fraction(a.m + j, a.e), FieldElem(a.field, c))
            for j, c in enumerate(a.expand(n)) if c]


def sab_degree_bound(a: Series, b: Series) -> int:
    """Least n >= 0 with v(a) + n*v(b) > 0; b must be infinitesimal."""
    vb = b.valuation()
    if not b.num or vb <= 0:
        raise NotInfinitesimal(f'v({b.format()}) must be positive')
    va = a.valuation()
    if va == INF or va > 0:
        return 0
    return floor(-va / vb) + 1


def sab_polynomial(a: Series, b: Series) -> Poly:
    """p_{a,b}(X) = sum_{i<n} res(a*b^i) X^i, so that res(a/(1-b*y)) = p_{a,b}(y) for y in k."""
    n = sab_degree_bound(a, b)
    coeffs = []
    term = a
    for _ in range(n):
        coeffs.append(term.coeff_raw(0))
        term = term * b
    return Poly(a.field, coeffs)
