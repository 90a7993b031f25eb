import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resfield.errors import DescriptorMismatch, InfiniteEnumeration, ParseError
from resfield.fields import (QQ, QQI, FieldElem, GaussianRational, PrimeField, field_add,
                             field_enumerate, field_inv, field_mul, field_neg, field_sample,
                             is_prime, parse_field)


def test_rational_addition():
    assert field_add(QQ(Fraction(1, 2)), QQ(Fraction(1, 3))) == QQ(Fraction(5, 6))


def test_prime_field_inverse():
    assert field_inv(PrimeField(7)(3)) == PrimeField(7)(5)


def test_gaussian_norm_product():
    one_plus_i = QQI(GaussianRational(1, 1))
    one_minus_i = QQI(GaussianRational(1, -1))
    assert field_mul(one_plus_i, one_minus_i) == QQI(2)


def test_negation_and_mixed_fields():
    assert field_neg(PrimeField(5)(2)) == PrimeField(5)(3)
    with pytest.raises(DescriptorMismatch):
        field_add(PrimeField(5)(1), PrimeField(7)(1))


def test_enumerate_small_prime_field():
    assert [x.value for x in field_enumerate(PrimeField(3))] == [0, 1, 2]


def test_enumerate_rationals_is_an_error():
    with pytest.raises(InfiniteEnumeration):
        list(field_enumerate(QQ))


def test_sampling_is_deterministic():
    assert field_sample(QQ, 42) == field_sample(QQ, 42)
    assert field_sample(QQI, 7) == field_sample(QQI, 7)


def test_prime_field_validation():
    with pytest.raises(ValueError):
        PrimeField(15)
    with pytest.raises(ValueError):
        PrimeField((1 << 31) + 11)
    assert PrimeField(2147483647).p == 2147483647


def test_is_prime_small_range():
    naive = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == naive


@pytest.mark.parametrize('text, expected', [('Q', 'Q'), ('Qi', 'Qi'), ('Fp:101', 'Fp:101')])
def test_parse_field_round_trip(text, expected):
    assert str(parse_field(text)) == expected


def test_parse_field_rejects_garbage():
    for bad in ('R', 'Fp:', 'Fp:12'):
        with pytest.raises((ValueError, ParseError)):
            parse_field(bad)


def test_gaussian_formatting():
    fmt = QQI.format
    assert fmt(GaussianRational(1, 2)) == '1+2i'
    assert fmt(GaussianRational(0, -1)) == '-i'
    assert fmt(GaussianRational(Fraction(1, 2), Fraction(3, 4))) == '1/2+3/4*i'


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QQ(1) / QQ(0)
    with pytest.raises(ZeroDivisionError):
        PrimeField(5)(0).inverse()


FIELDS = [QQ, QQI, PrimeField(5), PrimeField(101)]


@pytest.mark.parametrize('F', FIELDS, ids=str)
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_field_axioms(F, seed):
    rng = random.Random(seed)
    a, b, c = (FieldElem(F, F.sample(rng)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F(0)
    if a:
        assert a * a.inverse() == F(1)


@pytest.mark.parametrize('F', FIELDS, ids=str)
def test_hash_matches_equality(F):
    rng = random.Random(3)
    for _ in range(20):
        a, b = (FieldElem(F, F.sample(rng)) for _ in range(2))
        x, y = (a + b) + a, a + (b + a)
        assert x == y and hash(x) == hash(y)
