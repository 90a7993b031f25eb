"""Exact value-group elements: rationals plus the two infinities.

Finite values are plain ``Fraction`` objects.  ``INF`` is the valuation of
zero; ``NEG_INF`` is the degree of the zero polynomial.  Both compare
correctly against ``int`` and ``Fraction`` and absorb finite summands.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class Infinity:
    __slots__ = ('sign',)
    _instances = {}

    def __new__(cls, sign):
        if sign not in cls._instances:
            obj = super().__new__(cls)
            object.__setattr__(obj, 'sign', sign)
            cls._instances[sign] = obj
        return cls._instances[sign]

    def __setattr__(self, name, value):
        raise AttributeError('immutable')

    def __reduce__(self):
        return (Infinity, (self.sign,))

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(('inf', self.sign))

    def __lt__(self, other):
        if isinstance(other, Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Infinity):
            if other is not self:
                raise ArithmeticError('inf - inf is undefined')
            return self
        if isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Infinity(-self.sign)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __repr__(self):
        return 'INF' if self.sign > 0 else 'NEG_INF'

    def __str__(self):
        return 'oo' if self.sign > 0 else '-oo'


INF = Infinity(1)
NEG_INF = Infinity(-1)


def as_value(q):
    """Normalize an int/Fraction/infinity to a ValueQ."""
    if isinstance(q, Infinity):
        return q
    return Fraction(q)


def format_value(q) -> str:
    if isinstance(q, Infinity):
        return str(q)
    return str(Fraction(q))
