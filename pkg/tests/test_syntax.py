from fractions import Fraction

import pytest

from oracles import F5, QQ
from resfield.errors import ParseError
from resfield.fields import QQI, GaussianRational
from resfield.series import Series
from resfield.syntax import parse_field_elem, parse_poly, parse_scalar, parse_series


@pytest.mark.parametrize('text, value', [
    ('-3/4', Fraction(-3, 4)), ('2^3 - 1', 7), ('(1/2)^-2', 4), ('+5', 5),
])
def test_rational_scalars(text, value):
    assert parse_scalar(QQ, text) == value


def test_gaussian_literals():
    assert parse_scalar(QQI, '1+2i') == GaussianRational(1, 2)
    assert parse_scalar(QQI, '3i') == GaussianRational(0, 3)
    assert parse_scalar(QQI, 'i^2') == GaussianRational(-1, 0)


def test_imaginary_unit_needs_gaussian_field():
    with pytest.raises(ParseError):
        parse_scalar(QQ, '1+i')


def test_prime_field_literals():
    assert parse_field_elem(F5, '7') == F5(2)
    assert parse_field_elem(F5, '1/2') == F5(3)


def test_polynomial_literal():
    assert parse_poly(QQ, 'X^2 - 3*X + 2').coeffs == (2, -3, 1)


def test_series_literal_with_ramification():
    a = parse_series(QQ, 't^(1/2) * t^(-3/4)')
    assert a == Series.t_power(QQ, Fraction(-1, 4))


def test_fractional_power_only_on_t():
    with pytest.raises(ParseError):
        parse_series(QQ, '(1 + t)^(1/2)')


@pytest.mark.parametrize('text, pos', [('t^-2/(1-3*', 10), ('1 + * 2', 4), ('(1 + t', 6), ('1 2', 2)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_series(QQ, text)
    assert info.value.pos == pos
    assert f'position {pos}' in str(info.value)


def test_unknown_symbol():
    with pytest.raises(ParseError, match='unknown symbol'):
        parse_series(QQ, 'x + 1')


def test_division_by_zero_is_not_a_parse_error():
    with pytest.raises(ZeroDivisionError):
        parse_series(QQ, '1/(t - t)')
