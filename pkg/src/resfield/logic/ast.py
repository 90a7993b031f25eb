"""Abstract syntax for the three-sorted language with res, iota, v and t.

Sorts are ``K`` (the valued field), ``k`` (the residue field) and ``G`` (the
value group together with infinity).  Every term node carries its sort.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

K, k, G = 'K', 'k', 'G'
SORTS = (K, k, G)


class Node:
    @cached_property
    def free_vars(self) -> frozenset:
        return frozenset().union(*(c.free_vars for c in self.children()))

    def children(self):
        return ()


# terms ---------------------------------------------------------------------

@dataclass(frozen=True, eq=True)
class Var(Node):
    name: str
    sort: str

    @cached_property
    def free_vars(self):
        return frozenset((self.name,))


@dataclass(frozen=True)
class Num(Node):
    """Non-negative integer numeral at sort K, k or G."""
    value: int
    sort: str


@dataclass(frozen=True)
class Imag(Node):
    sort: str


@dataclass(frozen=True)
class TConst(Node):
    sort: str = field(default=K, init=False)


@dataclass(frozen=True)
class Inf(Node):
    sort: str = field(default=G, init=False)


@dataclass(frozen=True)
class Lit(Node):
    """Embedded value (Series, FieldElem or ValueQ), used by programmatic builders."""
    value: Any
    sort: str


@dataclass(frozen=True)
class BinOp(Node):
    op: str             # one of + - * /
    left: Node
    right: Node
    sort: str

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Neg(Node):
    arg: Node
    sort: str

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: Fraction
    sort: str

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Res(Node):
    arg: Node
    sort: str = field(default=k, init=False)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Iota(Node):
    arg: Node
    sort: str = field(default=K, init=False)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Val(Node):
    arg: Node
    sort: str = field(default=G, init=False)

    def children(self):
        return (self.arg,)


# formulas ------------------------------------------------------------------

@dataclass(frozen=True)
class Eq(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)

    @property
    def sort(self):
        return self.left.sort


@dataclass(frozen=True)
class Lt(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Truth(Node):
    value: bool


@dataclass(frozen=True)
class Not(Node):
    arg: Node

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Quant(Node):
    kind: str           # 'forall' | 'exists'
    var: str
    sort: str
    body: Node

    def children(self):
        return (self.body,)

    @cached_property
    def free_vars(self):
        return self.body.free_vars - {self.var}


TERM_TYPES = (Var, Num, Imag, TConst, Inf, Lit, BinOp, Neg, Pow, Res, Iota, Val)
FORMULA_TYPES = (Eq, Lt, Truth, Not, And, Or, Implies, Quant)


def is_closed(f: Node) -> bool:
    return not f.free_vars


# convenience builders --------------------------------------------------------

def add(a, b):
    return BinOp('+', a, b, a.sort)


def sub(a, b):
    return BinOp('-', a, b, a.sort)


def mul(a, b):
    return BinOp('*', a, b, a.sort)


def div(a, b):
    return BinOp('/', a, b, a.sort)


def conj(formulas):
    formulas = list(formulas)
    if not formulas:
        return Truth(True)
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out
