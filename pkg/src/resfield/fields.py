"""Exact coefficient fields k.

Three descriptors are provided: the rationals, prime fields GF(p) with
p < 2**31, and the Gaussian rationals Q(i).  Descriptors are immutable and
compare by value.  Arithmetic is carried out on *raw* values (``Fraction``,
``int`` residues, :class:`GaussianRational`) through the descriptor's methods;
:class:`FieldElem` is the user-facing wrapper that pairs a raw value with its
descriptor and overloads the usual operators.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DescriptorMismatch, DivisionByZero, InfiniteEnumeration

PRIME_BOUND = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GaussianRational:
    """Immutable element re + im*i of Q(i) with Fraction components."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        object.__setattr__(self, 're', Fraction(re))
        object.__setattr__(self, 'im', Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError('GaussianRational is immutable')

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self * other.inverse()

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero('inverse of 0 in Q(i)')
        return GaussianRational(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f'GaussianRational({self.re!s}, {self.im!s})'


def _format_fraction(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class Field:
    """Base descriptor.  Subclasses implement arithmetic on raw values."""

    def __call__(self, value) -> 'FieldElem':
        return FieldElem(self, self.convert(value))

    # raw-value protocol -------------------------------------------------
    zero = None
    one = None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero(f'inverse of 0 in {self}')
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def from_int(self, n: int):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def characteristic(self) -> int:
        return 0

    def enumerate(self):
        raise InfiniteEnumeration(f'{self} is infinite')

    def elem(self, raw) -> 'FieldElem':
        return FieldElem(self, raw)

    def is_real(self, a) -> bool:
        return True


@dataclass(frozen=True)
class Rationals(Field):
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def convert(self, value):
        if isinstance(value, FieldElem):
            _check(self, value.field)
            return value.value
        if isinstance(value, str):
            return _parse_scalar(self, value)
        if isinstance(value, GaussianRational):
            if value.im:
                raise ValueError(f'{value!r} is not rational')
            return value.re
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f'cannot convert {value!r} to a rational')
        return Fraction(value)

    def format(self, a) -> str:
        return _format_fraction(a)

    def sample(self, rng: random.Random, bound=10, den_bound=6):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, den_bound))

    def __str__(self):
        return 'Q'


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError('modulus must be an int')
        if self.p >= PRIME_BOUND:
            raise ValueError(f'modulus {self.p} is not below 2^31')
        if not is_prime(self.p):
            raise ValueError(f'{self.p} is not prime')

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f'inverse of 0 in {self}')
        return pow(a, -1, self.p)

    def power(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n):
        return n % self.p

    def convert(self, value):
        if isinstance(value, FieldElem):
            _check(self, value.field)
            return value.value
        if isinstance(value, str):
            return _parse_scalar(self, value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f'cannot convert {value!r} into GF({self.p})')
        return value % self.p

    @property
    def is_finite(self):
        return True

    @property
    def characteristic(self):
        return self.p

    def enumerate(self):
        return iter(range(self.p))

    def format(self, a) -> str:
        return str(a)

    def sample(self, rng: random.Random, **_):
        return rng.randrange(self.p)

    def __str__(self):
        return f'Fp:{self.p}'


@dataclass(frozen=True)
class GaussianRationals(Field):
    zero = GaussianRational(0, 0)
    one = GaussianRational(1, 0)
    i = GaussianRational(0, 1)

    def inv(self, a):
        return a.inverse()

    def from_int(self, n):
        return GaussianRational(n, 0)

    def convert(self, value):
        if isinstance(value, FieldElem):
            _check(self, value.field)
            return value.value
        if isinstance(value, str):
            return _parse_scalar(self, value)
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError('floating-point complex numbers are not exact')
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f'cannot convert {value!r} into Q(i)')
        return GaussianRational(value, 0)

    def format(self, a) -> str:
        re, im = a.re, a.im
        if not im:
            return _format_fraction(re)
        if im.denominator == 1:
            imag = {1: 'i', -1: '-i'}.get(im.numerator, f'{im.numerator}i')
        else:
            imag = f'{im}*i'
        if not re:
            return imag
        sign = '' if imag.startswith('-') else '+'
        return f'{_format_fraction(re)}{sign}{imag}'

    def sample(self, rng: random.Random, bound=6, den_bound=4):
        return GaussianRational(
            Fraction(rng.randint(-bound, bound), rng.randint(1, den_bound)),
            Fraction(rng.randint(-bound, bound), rng.randint(1, den_bound)),
        )

    def is_real(self, a):
        return not a.im

    def __str__(self):
        return 'Qi'


QQ = Rationals()
QQI = GaussianRationals()


def parse_field(spec: str) -> Field:
    """Parse a ``--field`` flag value: ``Q``, ``Qi`` or ``Fp:<p>``."""
    s = spec.strip()
    if s == 'Q':
        return QQ
    if s in ('Qi', 'Q(i)'):
        return QQI
    if s.startswith('Fp:'):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f'bad prime in field spec {spec!r}') from None
        return PrimeField(p)
    raise ValueError(f'unknown field {spec!r}; expected Q, Qi or Fp:<p>')


def _check(f1: Field, f2: Field):
    if f1 != f2:
        raise DescriptorMismatch(f'{f1} vs {f2}')


def _parse_scalar(field, text):
    from .syntax import parse_scalar
    return parse_scalar(field, text)


class FieldElem:
    """An element of a coefficient field, tagged with its descriptor."""

    __slots__ = ('field', 'value')

    def __init__(self, field: Field, value):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'value', value)

    def __setattr__(self, name, value):
        raise AttributeError('FieldElem is immutable')

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            _check(self.field, other.field)
            return other.value
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field.power(self.value, n))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        try:
            b = self._coerce(other)
        except (TypeError, ValueError, ZeroDivisionError):
            return False
        if b is NotImplemented:
            return NotImplemented
        return self.value == b

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f'FieldElem({self.field}, {self.field.format(self.value)})'

    def format(self) -> str:
        return self.field.format(self.value)

    __str__ = format


# functional surface ----------------------------------------------------

def field_add(a: FieldElem, b: FieldElem) -> FieldElem:
    _check(a.field, b.field)
    return a + b


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    _check(a.field, b.field)
    return a * b


def field_neg(a: FieldElem) -> FieldElem:
    return -a


def field_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def field_enumerate(field: Field):
    """Yield every element of a finite field; infinite fields raise."""
    for raw in field.enumerate():
        yield FieldElem(field, raw)


def field_sample(field: Field, seed) -> FieldElem:
    """Deterministic pseudo-random element for a given seed."""
    return FieldElem(field, field.sample(random.Random(seed)))
