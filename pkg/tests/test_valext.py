import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import F5, QQ, random_sdata
from resfield.errors import DivisionByZero, NotInValuationRing
from resfield.series import Series
from resfield.valext import ExtRatFunc, LexValue, gauss_residue, gauss_val, infinitesimal_val, parse_ext


def P(text, F=QQ):
    return parse_ext(F, text)


@pytest.mark.parametrize('text, expected', [
    ('t^2*X + t^-1', -1), ('1 - t*X', 0), ('(t*X + t)/t^2', -1),
])
def test_gauss_val(text, expected):
    assert gauss_val(P(text)) == expected


@pytest.mark.parametrize('text, expected', [
    ('1 - t*X', '1'), ('X + 2 + t', 'x + 2'), ('(X^2 - t)/(1 + t*X)', 'x^2'),
])
def test_gauss_residue(text, expected):
    assert gauss_residue(P(text)).format() == expected


def test_gauss_residue_needs_value_zero():
    with pytest.raises(NotInValuationRing):
        gauss_residue(P('t*X'))


def test_gauss_val_of_zero():
    with pytest.raises(DivisionByZero):
        gauss_val(P('X - X'))


@pytest.mark.parametrize('text, expected', [
    ('X', LexValue(1, 0)),
    ('2*X^-1 + 3*X^-2 + t', LexValue(-2, 0)),
    ('t*X + t^3', LexValue(0, 3)),
])
def test_infinitesimal_val(text, expected):
    assert infinitesimal_val(P(text)) == expected


def test_lex_order_has_x_dominant():
    assert LexValue(0, 1000) < LexValue(1, -1000)
    assert LexValue(1, 0) > LexValue(0, 5)
    assert str(LexValue(1, Fraction(-1, 2))) == '(1, -1/2)'


def test_equality_by_cross_multiplication():
    assert P('(X^2 - 1)/(X - 1)') == P('X + 1')
    assert P('X*X^-1') == P('1')


def _rand_poly(F, rng, max_deg=3):
    coeffs = {}
    for i in range(rng.randint(0, max_deg) + 1):
        if rng.random() < 0.8:
            coeffs[i] = random_sdata(F, rng, min_shift=-3, max_shift=3, max_deg=2).series()
    if not coeffs:
        coeffs[0] = Series.const(F, F.one)
    return ExtRatFunc.polynomial(F, coeffs)


def _unit(F, f):
    return f * ExtRatFunc.from_series(Series.t_power(F, -gauss_val(f)))


@pytest.mark.parametrize('F', [QQ, F5], ids=str)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_gauss_lemma(F, seed):
    rng = random.Random(seed)
    f, g = _rand_poly(F, rng), _rand_poly(F, rng)
    assert gauss_val(f * g) == gauss_val(f) + gauss_val(g)
    if f + g:
        assert gauss_val(f + g) >= min(gauss_val(f), gauss_val(g))
    uf, ug = _unit(F, f), _unit(F, g)
    assert gauss_residue(uf * ug) == gauss_residue(uf) * gauss_residue(ug)


@pytest.mark.parametrize('F', [QQ, F5], ids=str)
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_infinitesimal_val_is_a_valuation(F, seed):
    rng = random.Random(seed)
    f, g = _rand_poly(F, rng), _rand_poly(F, rng)
    h = _rand_poly(F, rng)
    q = f / h
    assert infinitesimal_val(f * g) == infinitesimal_val(f) + infinitesimal_val(g)
    assert infinitesimal_val(q * g) == infinitesimal_val(q) + infinitesimal_val(g)
    if f + g:
        assert infinitesimal_val(f + g) >= min(infinitesimal_val(f), infinitesimal_val(g))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_negative_powers_stay_negative_after_adding_constants(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    coeffs = {-i: Series.const(QQ, QQ.sample(rng)) for i in range(1, n)}
    coeffs[-n] = Series.const(QQ, Fraction(rng.choice([-3, -1, 1, 2])))
    f = ExtRatFunc.polynomial(QQ, coeffs)
    c = random_sdata(QQ, rng, min_shift=-5, max_shift=5, nonzero=rng.random() < 0.8).series()
    w = infinitesimal_val(f + ExtRatFunc.from_series(c))
    assert w.x_degree == -n < 0
