"""Evaluation in the series model over a chosen residue field k.

Quantifiers are handled only in the fragments that are actually decidable
here:

* k-sort quantifiers over a prime field, by exhaustive enumeration;
* ``forall y:k`` over an infinite field when the body reduces to a
  conjunction of polynomial identities in y (and ``exists`` by duality).
  A nonzero polynomial over an infinite field has only finitely many roots,
  so vanishing on k is the same as being the zero polynomial.

Anything else raises :class:`UnsupportedQuantifier`.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

from ..errors import (DescriptorMismatch, DivisionByZero, NotNormalizable, SortError,
                      UnboundVariable, UndefinedValue, UnsupportedQuantifier)
from ..fields import FieldElem, GaussianRationals
from ..poly import Poly
from ..series import Series, extract_pa, lift_iota, sab_polynomial, total_res
from ..values import INF, Infinity
from . import ast as A


def sort_of_value(value):
    if isinstance(value, Series):
        return A.K
    if isinstance(value, FieldElem):
        return A.k
    if isinstance(value, (Fraction, int, Infinity)) and not isinstance(value, bool):
        return A.G
    raise TypeError(f'not a model value: {value!r}')


class Assignment(Mapping):
    """Immutable variable -> value map over a fixed residue field."""

    def __init__(self, field, values=None):
        self.field = field
        self._values = {}
        for name, value in (values or {}).items():
            self._values[name] = self._check(value)

    def _check(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        sort_of_value(value)
        if isinstance(value, (Series, FieldElem)) and value.field != self.field:
            raise DescriptorMismatch(f'{value.field} vs {self.field}')
        return value

    def bind(self, name, value) -> 'Assignment':
        out = Assignment(self.field)
        out._values = dict(self._values)
        out._values[name] = self._check(value)
        return out

    def __getitem__(self, name):
        return self._values[name]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f'Assignment({self.field}, {self._values!r})'


# terms -------------------------------------------------------------------------

def _const(field, sort, n):
    if sort == A.K:
        return Series.const(field, field.from_int(n))
    if sort == A.k:
        return FieldElem(field, field.from_int(n))
    return Fraction(n)


def _imag(field, sort):
    if not isinstance(field, GaussianRationals):
        raise SortError(f'the imaginary unit is not in {field}')
    if sort == A.K:
        return Series.const(field, field.i)
    return FieldElem(field, field.i)


def _group_binop(op, a, b):
    if op == '+':
        return a + b
    if op == '-':
        if b == INF:
            raise UndefinedValue('oo has no additive inverse')
        return a + (-b)
    if op == '*':
        scalar, g = (a, b) if not isinstance(a, Infinity) else (b, a)
        if isinstance(g, Infinity):
            if scalar > 0:
                return INF
            raise UndefinedValue('non-positive multiple of oo')
        return scalar * g
    if b == 0:
        raise DivisionByZero('division of a value by 0')
    if isinstance(a, Infinity):
        if b > 0:
            return INF
        raise UndefinedValue('oo divided by a negative number')
    return a / b


def eval_term(t, sigma: Assignment):
    F = sigma.field
    if isinstance(t, A.Var):
        try:
            value = sigma[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
        if sort_of_value(value) != t.sort:
            raise SortError(f'{t.name} is bound to a {sort_of_value(value)}-value, used at sort {t.sort}')
        return value
    if isinstance(t, A.Num):
        return _const(F, t.sort, t.value)
    if isinstance(t, A.Imag):
        return _imag(F, t.sort)
    if isinstance(t, A.TConst):
        return Series.t_power(F, 1)
    if isinstance(t, A.Inf):
        return INF
    if isinstance(t, A.Lit):
        return t.value
    if isinstance(t, A.BinOp):
        a = eval_term(t.left, sigma)
        b = eval_term(t.right, sigma)
        if t.sort == A.G:
            return _group_binop(t.op, a, b)
        if t.op == '+':
            return a + b
        if t.op == '-':
            return a - b
        if t.op == '*':
            return a * b
        return a / b
    if isinstance(t, A.Neg):
        a = eval_term(t.arg, sigma)
        if isinstance(a, Infinity):
            raise UndefinedValue('oo has no additive inverse')
        return -a
    if isinstance(t, A.Pow):
        if isinstance(t.base, A.TConst):
            return Series.t_power(F, t.exp)
        return eval_term(t.base, sigma) ** int(t.exp)
    if isinstance(t, A.Res):
        return total_res(eval_term(t.arg, sigma))
    if isinstance(t, A.Iota):
        return lift_iota(eval_term(t.arg, sigma))
    if isinstance(t, A.Val):
        return eval_term(t.arg, sigma).valuation()
    raise TypeError(f'not a term: {t!r}')


# formulas ---------------------------------------------------------------------

STRATEGIES = ('auto', 'exhaustive', 'identity')


def eval_formula(f, sigma: Assignment, strategy: str = 'auto') -> bool:
    """Truth value of ``f`` under ``sigma``.

    ``strategy`` selects how k-quantifiers are decided: ``exhaustive``
    enumerates a finite field, ``identity`` normalizes to polynomial
    identities, ``auto`` enumerates finite fields and normalizes otherwise.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f'unknown strategy {strategy!r}')
    if isinstance(f, A.Eq):
        return eval_term(f.left, sigma) == eval_term(f.right, sigma)
    if isinstance(f, A.Lt):
        return eval_term(f.left, sigma) < eval_term(f.right, sigma)
    if isinstance(f, A.Truth):
        return f.value
    if isinstance(f, A.Not):
        return not eval_formula(f.arg, sigma, strategy)
    if isinstance(f, A.And):
        return eval_formula(f.left, sigma, strategy) and eval_formula(f.right, sigma, strategy)
    if isinstance(f, A.Or):
        return eval_formula(f.left, sigma, strategy) or eval_formula(f.right, sigma, strategy)
    if isinstance(f, A.Implies):
        return (not eval_formula(f.left, sigma, strategy)) or eval_formula(f.right, sigma, strategy)
    if isinstance(f, A.Quant):
        return _eval_quant(f, sigma, strategy)
    raise TypeError(f'not a formula: {f!r}')


def _eval_quant(f, sigma, strategy):
    if f.sort != A.k:
        domain = 'the valued field' if f.sort == A.K else 'the value group'
        raise UnsupportedQuantifier(
            f'{f.kind} {f.var}:{f.sort} ranges over {domain}; no decision procedure covers it')
    F = sigma.field
    if f.var not in f.body.free_vars:
        return eval_formula(f.body, sigma, strategy)
    if strategy == 'exhaustive' or (strategy == 'auto' and F.is_finite):
        if not F.is_finite:
            raise UnsupportedQuantifier(f'cannot enumerate the infinite field {F}')
        results = (eval_formula(f.body, sigma.bind(f.var, FieldElem(F, x)), strategy)
                   for x in F.enumerate())
        return all(results) if f.kind == 'forall' else any(results)
    if f.kind == 'forall':
        polys = normalize_forall_k(f.body, f.var, sigma, strategy)
        return all(vanishes_on_k(p) for p in polys)
    polys = normalize_forall_k(A.Not(f.body), f.var, sigma, strategy)
    return not all(vanishes_on_k(p) for p in polys)


def vanishes_on_k(p: Poly) -> bool:
    """Whether p(y) = 0 for every y in k.

    Over an infinite field this is the zero test; over GF(q) p is first
    reduced modulo y^q - y.
    """
    F = p.field
    if not F.is_finite or not p or p.degree < F.p:
        return not p
    xq = Poly.monomial(F, F.one, F.p) - Poly.x(F)
    return not (p % xq)


# normalization of a universally quantified k-variable ----------------------------

def normalize_forall_k(body, y: str, sigma: Assignment, strategy: str = 'auto'):
    """Polynomials in y whose simultaneous vanishing on k is equivalent to ``body``.

    ``body`` must be (up to negation normal form) a conjunction of k-sort
    equations; y-free subformulas are evaluated outright.
    """
    out = []
    _Normalizer(y, sigma, strategy).literals(body, True, out)
    return out


class _Normalizer:
    def __init__(self, y, sigma, strategy):
        self.y = y
        self.sigma = sigma
        self.strategy = strategy
        self.F = sigma.field

    def fail(self, msg, node=None):
        from .printer import to_text
        where = f': {to_text(node)}' if node is not None else ''
        return NotNormalizable(f'{msg}{where}')

    def literals(self, f, positive, out):
        if self.y not in f.free_vars:
            if eval_formula(f, self.sigma, self.strategy) != positive:
                out.append(Poly.constant(self.F, self.F.one))
            return
        if isinstance(f, A.Not):
            return self.literals(f.arg, not positive, out)
        if isinstance(f, (A.And, A.Or, A.Implies)):
            reduced = self.partial(f)
            if reduced is not f:
                return self.literals(reduced, positive, out)
        if isinstance(f, A.And) and positive or isinstance(f, A.Or) and not positive:
            self.literals(f.left, positive, out)
            self.literals(f.right, positive, out)
            return
        if isinstance(f, A.Implies) and not positive:
            self.literals(f.left, True, out)
            self.literals(f.right, False, out)
            return
        if isinstance(f, A.Eq) and positive:
            if f.sort != A.k:
                raise self.fail(f'{self.y} occurs in an equation of sort {f.sort}', f)
            out.append(self.kpoly(f.left) - self.kpoly(f.right))
            return
        raise self.fail(f'{self.y} occurs outside a conjunction of k-equations', f)

    def partial(self, f):
        """Simplify a connective one of whose sides does not mention y."""
        left_free = self.y not in f.left.free_vars
        right_free = self.y not in f.right.free_vars
        if not (left_free or right_free):
            return f
        known, other = (f.left, f.right) if left_free else (f.right, f.left)
        value = eval_formula(known, self.sigma, self.strategy)
        if isinstance(f, A.And):
            return other if value else A.Truth(False)
        if isinstance(f, A.Or):
            return A.Truth(True) if value else other
        if left_free:
            return other if value else A.Truth(True)
        return A.Truth(True) if value else A.Not(other)

    # k-sort terms -> polynomials in y
    def kpoly(self, t) -> Poly:
        F = self.F
        if self.y not in t.free_vars:
            return Poly.constant(F, eval_term(t, self.sigma).value)
        if isinstance(t, A.Var):
            return Poly.x(F)
        if isinstance(t, A.BinOp):
            if t.op == '/':
                if self.y in t.right.free_vars:
                    raise self.fail(f'{self.y} occurs in a denominator', t)
                c = eval_term(t.right, self.sigma)
                return self.kpoly(t.left).scale(F.inv(c.value))
            a, b = self.kpoly(t.left), self.kpoly(t.right)
            return a + b if t.op == '+' else a - b if t.op == '-' else a * b
        if isinstance(t, A.Neg):
            return -self.kpoly(t.arg)
        if isinstance(t, A.Pow):
            if t.exp < 0:
                raise self.fail(f'negative power of a term in {self.y}', t)
            return self.kpoly(t.base) ** int(t.exp)
        if isinstance(t, A.Res):
            num, den = self.kfrac(t.arg)
            return self.res_of_fraction(num, den, t)
        raise self.fail(f'{self.y} occurs in an unsupported position', t)

    # K-sort terms -> (numerator, denominator) in K[Y], Y = iota(y)
    def kfrac(self, t):
        F = self.F
        one = [Series.const(F, F.one)]
        if self.y not in t.free_vars:
            return [eval_term(t, self.sigma)], one
        if isinstance(t, A.Iota):
            p = self.kpoly(t.arg)
            return [Series.const(F, c) for c in p.coeffs], one
        if isinstance(t, A.BinOp):
            n1, d1 = self.kfrac(t.left)
            n2, d2 = self.kfrac(t.right)
            if t.op in '+-':
                if t.op == '-':
                    n2 = [-c for c in n2]
                if d1 == d2:
                    return _ky_add(n1, n2), d1
                return _ky_add(_ky_mul(n1, d2), _ky_mul(n2, d1)), _ky_mul(d1, d2)
            if t.op == '*':
                return _ky_mul(n1, n2), _ky_mul(d1, d2)
            if not _ky_trim(n2):
                raise DivisionByZero('division by a term that vanishes identically')
            return _ky_mul(n1, d2), _ky_mul(d1, n2)
        if isinstance(t, A.Neg):
            n, d = self.kfrac(t.arg)
            return [-c for c in n], d
        if isinstance(t, A.Pow):
            n, d = self.kfrac(t.base)
            e = int(t.exp)
            if e < 0:
                n, d, e = d, n, -e
            return _ky_pow(n, e, F), _ky_pow(d, e, F)
        raise self.fail(f'{self.y} occurs in an unsupported K-position', t)

    def res_of_fraction(self, num, den, node):
        F = self.F
        num, den = _ky_trim(num), _ky_trim(den)
        if not num:
            return Poly(F)
        out = Poly(F)
        ypow = Poly.constant(F, F.one)
        x = Poly.x(F)
        if len(den) == 1:
            d0 = den[0]
            for c in num:
                out = out + ypow.scale(total_res(c / d0).value)
                ypow = ypow * x
            return out
        if len(den) == 2 and den[0]:
            d0, d1 = den
            b = -d1 / d0
            if b.valuation() <= 0:
                raise self.fail('denominator 1 - b*iota(y) needs v(b) > 0', node)
            t = Series.t_power(F, 1)
            for c in num:
                a = c / d0
                p = extract_pa(a) if b == t else sab_polynomial(a, b)
                out = out + ypow * p
                ypow = ypow * x
            return out
        raise self.fail('res of a quotient whose denominator is not of the form c*(1 - b*iota(y))', node)


def _ky_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _ky_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _ky_trim(out)


def _ky_mul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = x * y if out[i + j] is None else out[i + j] + x * y
    return _ky_trim(out)


def _ky_pow(a, n, F):
    out = [Series.const(F, F.one)]
    for _ in range(n):
        out = _ky_mul(out, a)
    return out
