"""Dense univariate polynomials over a coefficient field, and root finding in k."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

from .errors import DescriptorMismatch, DivisionByZero
from .fields import Field, FieldElem, GaussianRational, GaussianRationals, PrimeField, Rationals
from .values import NEG_INF

EXHAUSTIVE_LIMIT = 1 << 16


class Poly:
    """Polynomial over ``field`` with raw coefficients, lowest degree first.

    The coefficient tuple never ends in a zero; the zero polynomial is ``()``.
    """

    __slots__ = ('field', 'coeffs')

    def __init__(self, field: Field, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('Poly is immutable')

    @classmethod
    def from_values(cls, field: Field, values):
        """Build from arbitrary convertible values (ints, Fractions, FieldElems)."""
        return cls(field, [field.convert(v) for v in values])

    @classmethod
    def constant(cls, field: Field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field: Field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def monomial(cls, field, c, n):
        return cls(field, [field.zero] * n + [c])

    @classmethod
    def from_roots(cls, field, roots):
        f = cls.constant(field, field.one)
        for r in roots:
            f = f * cls(field, (field.neg(field.convert(r)), field.one))
        return f

    # structure ----------------------------------------------------------
    @property
    def degree(self):
        """Degree, or ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1]

    def coefficient(self, n: int) -> FieldElem:
        raw = self.coeffs[n] if 0 <= n < len(self.coeffs) else self.field.zero
        return FieldElem(self.field, raw)

    @property
    def coefficients(self):
        return [FieldElem(self.field, c) for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f'Poly({self.field}, {self.format()!r})'

    def __str__(self):
        return self.format()

    # arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise DescriptorMismatch(f'{self.field} vs {other.field}')
            return other
        if isinstance(other, FieldElem):
            return Poly(self.field, (self.field.convert(other),))
        if isinstance(other, (int, Fraction, GaussianRational)) and not isinstance(other, bool):
            return Poly(self.field, (self.field.convert(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError('negative power of a polynomial')
        result = Poly.constant(self.field, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other:
            raise DivisionByZero('polynomial division by zero')
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = F.inv(other.coeffs[-1])
        if len(rem) - 1 < db:
            return Poly(F), self
        quo = [F.zero] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = F.mul(rem[k + db], inv_lc)
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = F.sub(rem[k + j], F.mul(c, y))
        return Poly(F, quo), Poly(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        """Exact division by a scalar or by a polynomial that divides evenly."""
        if isinstance(other, Poly):
            q, r = divmod(self, other)
            if r:
                raise ValueError('inexact polynomial division')
            return q
        c = self._lift(other)
        if c is NotImplemented:
            return c
        if not c:
            raise DivisionByZero('polynomial division by zero')
        return self.scale(self.field.inv(c.coeffs[0]))

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other):
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self.monic(), self._lift(other).monic()
        while b:
            # monic remainders keep rational coefficients from growing
            a, b = b, (a % b).monic()
        return a

    def squarefree_part(self):
        """f / gcd(f, f'); valid in characteristic zero."""
        if self.degree in (NEG_INF, 0):
            return self
        return (self // self.gcd(self.derivative())).monic()

    def __call__(self, y):
        """Horner evaluation at a raw field value."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, y), c)
        return acc

    def compose(self, g: 'Poly'):
        """self(g(X))."""
        out = Poly(self.field)
        for c in reversed(self.coeffs):
            out = out * g + Poly(self.field, (c,))
        return out

    def map_coeffs(self, fn, field=None):
        return Poly(field or self.field, [fn(c) for c in self.coeffs])

    def format(self, var='X', descending=True) -> str:
        terms = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if descending:
            terms.reverse()
        return format_terms(self.field, [(_int_power(var, i), c) for i, c in terms])


def _int_power(var, n):
    if n == 0:
        return ''
    if n == 1:
        return var
    return f'{var}^{n}'


def split_sign(field, c):
    """(negative?, magnitude) for sign-aware pretty printing."""
    if isinstance(field, Rationals):
        return (c < 0, -c if c < 0 else c)
    if isinstance(field, GaussianRationals):
        if c.re == 0 and c.im < 0 or c.im == 0 and c.re < 0:
            return True, -c
        return False, c
    return False, c


def format_terms(field, terms) -> str:
    """Render ``[(monomial_text, raw_coeff), ...]`` as ``a*m1 + b*m2 - ...``."""
    if not terms:
        return '0'
    parts = []
    for k, (mono, c) in enumerate(terms):
        neg, mag = split_sign(field, c)
        text = field.format(mag)
        compound = isinstance(field, GaussianRationals) and mag.re != 0 and mag.im != 0
        if mono:
            if mag == field.one:
                body = mono
            else:
                body = f'({text})*{mono}' if compound else f'{text}*{mono}'
        else:
            body = f'({text})' if compound and len(terms) > 1 else text
        if k == 0:
            parts.append('-' + body if neg else body)
        else:
            parts.append((' - ' if neg else ' + ') + body)
    return ''.join(parts)


# functional surface ----------------------------------------------------

def poly_eval(f: Poly, y: FieldElem) -> FieldElem:
    if y.field != f.field:
        raise DescriptorMismatch(f'{f.field} vs {y.field}')
    return FieldElem(f.field, f(y.value))


def poly_is_zero(f: Poly) -> bool:
    return not f.coeffs


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial lying in k; ``all_of_k`` marks the zero polynomial."""

    roots: frozenset
    all_of_k: bool = False

    def sorted(self):
        return sorted(self.roots, key=lambda r: sort_key(r.field, r.value))


def sort_key(field, raw):
    if isinstance(field, GaussianRationals):
        return (raw.re, raw.im)
    return raw


def poly_roots_in_k(f: Poly, seed: int = 0) -> RootSet:
    F = f.field
    if not f:
        return RootSet(frozenset(), True)
    if isinstance(F, PrimeField):
        raw = _prime_field_roots(f, seed)
    elif isinstance(F, Rationals):
        raw = _rational_roots(f)
    elif isinstance(F, GaussianRationals):
        raw = _gaussian_roots(f)
    else:
        raise TypeError(f'unsupported field {F}')
    return RootSet(frozenset(FieldElem(F, r) for r in raw), False)


# prime fields -----------------------------------------------------------

def _prime_field_roots(f, seed):
    p = f.field.p
    if f.degree == 0:
        return set()
    if p <= EXHAUSTIVE_LIMIT:
        return {y for y in range(p) if f(y) == 0}
    # large p: isolate the product of distinct linear factors, then split it
    x = Poly.x(f.field)
    xp = powmod(x, p, f)
    h = f.gcd(xp - x)
    roots = set()
    _cz_split(h, p, random.Random(seed), roots)
    return roots


def powmod(base: Poly, n: int, mod: Poly) -> Poly:
    result = Poly.constant(base.field, base.field.one) % mod
    base = base % mod
    while n:
        if n & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        n >>= 1
    return result


def _cz_split(h, p, rng, out):
    if h.degree in (NEG_INF, 0):
        return
    if h.degree == 1:
        out.add(h.field.div(h.field.neg(h.coeffs[0]), h.coeffs[1]))
        return
    F = h.field
    one = Poly.constant(F, 1)
    while True:
        a = rng.randrange(p)
        g = h.gcd(powmod(Poly(F, (a, 1)), (p - 1) // 2, h) - one)
        if 0 < g.degree < h.degree:
            _cz_split(g, p, rng, out)
            _cz_split(h // g, p, rng, out)
            return


# rationals -------------------------------------------------------------

def _strip_zero_root(f):
    k = 0
    while not f.coeffs[k]:
        k += 1
    return k > 0, Poly(f.field, f.coeffs[k:])


def _rational_roots(f):
    roots = set()
    has_zero, g = _strip_zero_root(f)
    if has_zero:
        roots.add(Fraction(0))
    if g.degree < 1:
        return roots
    g = g.squarefree_part()
    den = lcm(*(c.denominator for c in g.coeffs))
    ints = [int(c * den) for c in g.coeffs]
    content = gcd(*ints)
    ints = [c // content for c in ints]
    roots.update(_hensel_roots(ints))
    return roots


def _primes_from(n):
    while True:
        if _is_small_prime(n):
            yield n
        n += 1


def _is_small_prime(n):
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _mod_poly(coeffs, p):
    return Poly(PrimeField(p), [c % p for c in coeffs])


def _good_prime(reduce_coeffs, deg, start=3, accept=lambda p: True):
    """First prime p at which the reduction keeps its degree and stays squarefree."""
    for p in _primes_from(start):
        if not accept(p):
            continue
        gp = Poly(PrimeField(p), reduce_coeffs(p))
        if gp.degree != deg:
            continue
        if gp.gcd(gp.derivative()).degree == 0:
            return p, gp


def _newton_lift(coeffs, deriv, r, p, M):
    """Lift a simple root r mod p to a root mod M (a power of p)."""
    mod = p
    while mod < M:
        mod = min(mod * mod, M)
        fr = _eval_mod(coeffs, r, mod)
        dr = _eval_mod(deriv, r, mod)
        r = (r - fr * pow(dr, -1, mod)) % mod
    return r


def _eval_mod(coeffs, x, m):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _modulus_above(p, bound):
    M = p
    while M <= bound:
        M *= M
    return M


def _hensel_roots(a):
    """Rational roots of a squarefree primitive integer polynomial with a[0] != 0."""
    n = len(a) - 1
    lc = a[-1]
    p, gp = _good_prime(lambda q: [c % q for c in a], n)
    B = abs(lc) + max(abs(c) for c in a)
    M = _modulus_above(p, 2 * B)
    am = [c % M for c in a]
    dm = [(i * c) % M for i, c in enumerate(am)][1:]
    roots = set()
    for r0 in range(p):
        if gp(r0):
            continue
        r = _newton_lift(am, dm, r0, p, M)
        z = lc * r % M
        if z > M // 2:
            z -= M
        cand = Fraction(z, lc)
        if _exact_eval_int(a, cand) == 0:
            roots.add(cand)
    return roots


def _exact_eval_int(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# Gaussian rationals ----------------------------------------------------

def _gaussian_roots(f):
    roots = set()
    has_zero, g = _strip_zero_root(f)
    if has_zero:
        roots.add(GaussianRational(0, 0))
    if g.degree < 1:
        return roots
    g = g.squarefree_part()
    den = lcm(*(x.denominator for c in g.coeffs for x in (c.re, c.im)))
    pairs = [(int(c.re * den), int(c.im * den)) for c in g.coeffs]
    content = gcd(*(x for pr in pairs for x in pr))
    pairs = [(x // content, y // content) for x, y in pairs]
    roots.update(_gaussian_hensel_roots(pairs))
    return roots


def _sqrt_minus_one(p):
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            return pow(c, (p - 1) // 4, p)
    raise ValueError(p)


def _gaussian_hensel_roots(pairs):
    n = len(pairs) - 1
    lc = pairs[-1]
    sqrt_cache = {}

    def reduce(q):
        s = sqrt_cache.setdefault(q, _sqrt_minus_one(q))
        return [(x + y * s) % q for x, y in pairs]

    p, gp = _good_prime(reduce, n, start=5, accept=lambda q: q % 4 == 1)
    s = sqrt_cache[p]
    lc_abs = isqrt(lc[0] ** 2 + lc[1] ** 2) + 1
    coeff_abs = isqrt(max(x * x + y * y for x, y in pairs)) + 1
    B = lc_abs + coeff_abs
    M = _modulus_above(p, 64 * B * B)
    S = _newton_lift([1, 0, 1], [0, 2], s, p, M)
    am = [(x + y * S) % M for x, y in pairs]
    dm = [(i * c) % M for i, c in enumerate(am)][1:]
    lc_m = (lc[0] + lc[1] * S) % M
    basis = _gauss_reduce((M, 0), (-S, 1))
    lc_g = GaussianRational(*lc)
    roots = set()
    for r0 in range(p):
        if gp(r0):
            continue
        r = _newton_lift(am, dm, r0, p, M)
        rho = lc_m * r % M
        for za, zb in _short_coset_vectors(rho, basis):
            if abs(za) > B or abs(zb) > B:
                continue
            cand = GaussianRational(za, zb) / lc_g
            if _gauss_eval(pairs, cand) == GaussianRational(0, 0):
                roots.add(cand)
                break
    return roots


def _gauss_eval(pairs, x):
    acc = GaussianRational(0, 0)
    for a, b in reversed(pairs):
        acc = acc * x + GaussianRational(a, b)
    return acc


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _gauss_reduce(u, v):
    """Lagrange-Gauss reduction of a 2-D integer lattice basis."""
    if _dot(u, u) < _dot(v, v):
        u, v = v, u
    while True:
        mu = _round_div(_dot(u, v), _dot(v, v))
        u = (u[0] - mu * v[0], u[1] - mu * v[1])
        if _dot(u, u) >= _dot(v, v):
            return v, u
        u, v = v, u


def _round_div(a, b):
    return (2 * a + b) // (2 * b)


def _short_coset_vectors(rho, basis):
    """Candidates (a, b) with a + b*S = rho (mod M), nearest the origin first."""
    b1, b2 = basis
    det = b1[0] * b2[1] - b1[1] * b2[0]
    # coordinates of the target (rho, 0) in the reduced basis
    c1 = Fraction(rho * b2[1], det)
    c2 = Fraction(-rho * b1[1], det)
    k1, k2 = round(c1), round(c2)
    base = (rho - k1 * b1[0] - k2 * b2[0], -k1 * b1[1] - k2 * b2[1])
    out = []
    for i in (0, 1, -1):
        for j in (0, 1, -1):
            out.append((base[0] + i * b1[0] + j * b2[0], base[1] + i * b1[1] + j * b2[1]))
    return out
