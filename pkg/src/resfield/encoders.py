"""Executable reductions built on the residue map.

* Polynomial systems over k[T] become sentences of the form
  ``exists a1..am:K . forall y:k . f_j(res(a_i/(1 - t*iota(y))), y) = 0``,
  and candidate witnesses are checked by substituting p_{a_i} for X_i.
* Finite subsets of k are coded by pairs (a, b) through
  S_{a,b} = {beta : res(a/(1 - b*iota(beta))) = 0}.
* Membership in iota(k) comes with an explicit witness when it fails.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, DescriptorMismatch, NotInfinitesimal, ParseError
from .fields import Field, FieldElem
from .logic import ast as A
from .logic.evaluator import Assignment, vanishes_on_k
from .poly import Poly, poly_roots_in_k, sort_key
from .series import Series, extract_pa, lift_iota, sab_degree_bound, sab_polynomial, total_res
from .syntax import Algebra, ExpressionReader

# integer polynomials in X1..Xm, T ---------------------------------------------


class MPoly:
    """Integer polynomial in X1..Xm and T.

    ``terms`` maps exponent tuples ``(e1, ..., em, eT)`` to nonzero ints.
    """

    __slots__ = ('m', 'terms')

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, m, c):
        return cls(m, {(0,) * (m + 1): c})

    @classmethod
    def var(cls, m, index):
        """Index 1..m selects X_index; index 0 selects T."""
        e = [0] * (m + 1)
        e[index - 1 if index else m] = 1
        return cls(m, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.m != self.m:
                raise ValueError('polynomials in different numbers of variables')
            return other
        if isinstance(other, int):
            return MPoly.const(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError('exponents must be non-negative integers')
        out = MPoly.const(self.m, 1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        raise ValueError('division is not allowed in integer polynomials')

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms by descending exponent tuple, so X1 comes before X2 before T."""
        return sorted(self.terms.items(), reverse=True)

    def format(self) -> str:
        if not self.terms:
            return '0'
        names = [f'X{i}' for i in range(1, self.m + 1)] + ['T']
        parts = []
        for e, c in self.sorted_terms():
            mono = '*'.join(n if k == 1 else f'{n}^{k}' for n, k in zip(names, e) if k)
            mag = abs(c)
            body = mono if mono and mag == 1 else f'{mag}*{mono}' if mono else str(mag)
            parts.append(('-' if c < 0 else '+', body))
        first_sign, first = parts[0]
        text = ('-' if first_sign == '-' else '') + first
        return text + ''.join(f' {s} {b}' for s, b in parts[1:])

    def __repr__(self):
        return f'MPoly({self.format()!r})'


class _MPolyAlgebra(Algebra):
    def __init__(self, m):
        self.m = m

    def const(self, n):
        return MPoly.const(self.m, n)

    def name(self, tok):
        if tok.text == 'T':
            return MPoly.var(self.m, 0)
        match = re.fullmatch(r'X([1-9]\d*)', tok.text)
        if match and int(match.group(1)) <= self.m:
            return MPoly.var(self.m, int(match.group(1)))
        raise ParseError(f'unknown variable {tok.text!r} (expected X1..X{self.m} or T)', tok.pos)


def _max_unknown(text):
    return max((int(n) for n in re.findall(r'\bX([1-9]\d*)\b', text)), default=0)


def parse_mpoly(text: str, m: int | None = None) -> MPoly:
    if m is None:
        m = _max_unknown(text)
    return ExpressionReader(text, _MPolyAlgebra(m)).read()


@dataclass(frozen=True)
class DiophSystem:
    m: int
    polys: tuple

    def __post_init__(self):
        object.__setattr__(self, 'polys', tuple(self.polys))
        if not self.polys:
            raise ValueError('a system needs at least one polynomial')
        for f in self.polys:
            if f.m != self.m:
                raise ValueError(f'{f.format()} is not in {self.m} unknowns')

    @classmethod
    def parse(cls, text: str) -> 'DiophSystem':
        """One polynomial per line; ``#`` starts a comment; blank lines are skipped."""
        lines = [line.split('#', 1)[0].strip() for line in text.splitlines()]
        lines = [line for line in lines if line]
        m = max((_max_unknown(line) for line in lines), default=0)
        return cls(m, [parse_mpoly(line, m) for line in lines])


# the H10 sentence ---------------------------------------------------------------

def _pa_term(a_name, y_name):
    one_minus = A.BinOp('-', A.Num(1, A.K),
                        A.BinOp('*', A.TConst(), A.Iota(A.Var(y_name, A.k)), A.K), A.K)
    return A.Res(A.BinOp('/', A.Var(a_name, A.K), one_minus, A.K))


def _mpoly_term(f: MPoly, unknowns, y_term):
    """Logic term of sort k for f(unknowns, y); powers become repeated products."""
    if not f.terms:
        return A.Num(0, A.k)
    out = None
    for e, c in f.sorted_terms():
        factors = [u for u, k in zip(unknowns, e[:-1]) for _ in range(k)]
        factors += [y_term] * e[-1]
        if abs(c) != 1 or not factors:
            factors.insert(0, A.Num(abs(c), A.k))
        mono = factors[0]
        for g in factors[1:]:
            mono = A.mul(mono, g)
        if out is None:
            out = A.Neg(mono, A.k) if c < 0 else mono
        else:
            out = A.sub(out, mono) if c < 0 else A.add(out, mono)
    return out


def witness_names(m):
    return [f'a{i}' for i in range(1, m + 1)]


def h10_matrix(sys: DiophSystem, y='y'):
    """The universal part ``forall y:k . /\\ f_j(...) = 0`` with free a1..am."""
    unknowns = [_pa_term(a, y) for a in witness_names(sys.m)]
    y_term = A.Var(y, A.k)
    eqs = [A.Eq(_mpoly_term(f, unknowns, y_term), A.Num(0, A.k)) for f in sys.polys]
    return A.Quant('forall', y, A.k, A.conj(eqs))


def encode_h10(sys: DiophSystem):
    f = h10_matrix(sys)
    for a in reversed(witness_names(sys.m)):
        f = A.Quant('exists', a, A.K, f)
    return f


def h10_instance(sys: DiophSystem, witnesses, field: Field):
    """The sentence with its existential block stripped, plus the assignment a_i -> witness_i."""
    if len(witnesses) != sys.m:
        raise ArityMismatch(f'{len(witnesses)} witnesses for {sys.m} unknowns')
    return h10_matrix(sys), Assignment(field, dict(zip(witness_names(sys.m), witnesses)))


@dataclass(frozen=True)
class H10Check:
    ok: bool
    pa: tuple           # p_{a_i} for each witness
    composed: tuple     # f_j(p_{a_1}(T), ..., T)

    def __bool__(self):
        return self.ok


def check_h10_witness(sys: DiophSystem, witnesses, field: Field | None = None) -> H10Check:
    """Check f_j(p_{a_1}(T), ..., p_{a_m}(T), T) vanishes on k for every j.

    ``field`` is needed only when there are no witnesses (m = 0).
    """
    if len(witnesses) != sys.m:
        raise ArityMismatch(f'{len(witnesses)} witnesses for {sys.m} unknowns')
    if field is None:
        if not witnesses:
            raise ValueError('field is required when the system has no unknowns')
        field = witnesses[0].field
    pas = tuple(extract_pa(w) for w in witnesses)
    T = Poly.x(field)
    composed = tuple(_compose(f, pas, T) for f in sys.polys)
    return H10Check(all(vanishes_on_k(p) for p in composed), pas, composed)


def _compose(f: MPoly, pas, T):
    F = T.field
    bases = list(pas) + [T]
    powers = {}

    def power(i, k):
        if (i, k) not in powers:
            powers[i, k] = bases[i] ** k
        return powers[i, k]

    out = Poly(F)
    for e, c in f.sorted_terms():
        term = Poly.constant(F, F.from_int(c))
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def witness_from_polynomial_solution(sol):
    """a_i = sol_i(t^-1), so that p_{a_i} = sol_i."""
    return [Series.from_poly_in_tinv(f) for f in sol]


# S_{a,b} and finite sets ----------------------------------------------------------

@dataclass(frozen=True)
class SabResult:
    all_of_k: bool
    elements: tuple     # sorted FieldElems; empty when all_of_k
    p_ab: Poly
    n: int

    def format(self) -> str:
        if self.all_of_k:
            return 'all of k'
        return '{' + ', '.join(e.format() for e in self.elements) + '}'


def compute_Sab(a: Series, b: Series, seed: int = 0) -> SabResult:
    if a.field != b.field:
        raise DescriptorMismatch(f'{a.field} vs {b.field}')
    if not b or b.valuation() <= 0:
        raise NotInfinitesimal('b must have positive valuation')
    n = sab_degree_bound(a, b)
    p = sab_polynomial(a, b)
    if not p:
        return SabResult(True, (), p, n)
    roots = poly_roots_in_k(p, seed=seed)
    return SabResult(False, tuple(roots.sorted()), p, n)


def encode_finite_set(field: Field, elements):
    """(a, b) with S_{a,b} equal to the given finite set: a = prod(t^-1 - s), b = t."""
    tinv = Series.t_power(field, -1)
    a = Series.const(field, field.one)
    seen = set()
    for s in sorted({field.convert(x) if not isinstance(x, FieldElem) else x.value for x in elements},
                    key=lambda r: sort_key(field, r)):
        if s in seen:
            continue
        seen.add(s)
        a = a * (tinv - Series.const(field, s))
    return a, Series.t_power(field, 1)


# membership in iota(k) --------------------------------------------------------------

@dataclass(frozen=True)
class InK:
    alpha: FieldElem


@dataclass(frozen=True)
class NotInK:
    q: object           # exponent, x' = x - iota(res x) has valuation q != 0
    witness: Series     # y = t^-q
    res_xy: FieldElem
    res_x_res_y: FieldElem


def defk_check(x: Series):
    """Either x = iota(alpha), or a y with res(x*y) != res(x)*res(y)."""
    F = x.field
    if x.is_constant():
        return InK(total_res(x))
    r = total_res(x)
    q = (x - lift_iota(r)).valuation()
    y = Series.t_power(F, -q)
    lhs, rhs = total_res(x * y), r * total_res(y)
    if lhs == rhs:
        raise AssertionError(f'witness t^{-q} failed for {x.format()}')
    return NotInK(q, y, lhs, rhs)


def modelcomp_identity_check(n: int, beta: FieldElem) -> bool:
    """res(t^-n / (1 - t*iota(beta))) == beta^n."""
    F = beta.field
    one = Series.const(F, F.one)
    t = Series.t_power(F, 1)
    value = total_res(Series.t_power(F, -n) / (one - t * lift_iota(beta)))
    return value == beta ** n

