"""Render ASTs back to concrete syntax.

Output re-parses to a structurally equal AST (given the same free-variable
sorts), except for embedded ``Lit`` values, which print as parenthesized
expressions.  Parentheses are emitted only where precedence requires them;
a ``(e : S)`` ascription is added when an equation's sort would otherwise be
inferred differently.
"""

from __future__ import annotations

from fractions import Fraction

from . import ast as A

_TERM_PREC = {'+': 1, '-': 1, '*': 2, '/': 2}


def _exp_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f'({q})'


def sort_forced(t) -> bool:
    """Does the term pin its own sort without help from context?"""
    if isinstance(t, (A.Num, A.Imag)):
        return False
    if isinstance(t, A.BinOp):
        return sort_forced(t.left) or sort_forced(t.right)
    if isinstance(t, (A.Neg, A.Pow)):
        return sort_forced(t.base if isinstance(t, A.Pow) else t.arg)
    return True


def print_term(t, ctx=0) -> str:
    text, prec = _term(t)
    return f'({text})' if prec < ctx else text


def _term(t):
    if isinstance(t, A.Var):
        return t.name, 5
    if isinstance(t, A.Num):
        return str(t.value), 5
    if isinstance(t, A.Imag):
        return 'i', 5
    if isinstance(t, A.TConst):
        return 't', 5
    if isinstance(t, A.Inf):
        return 'oo', 5
    if isinstance(t, A.Lit):
        return f'({_lit_text(t)})', 5
    if isinstance(t, A.BinOp):
        p = _TERM_PREC[t.op]
        return f'{print_term(t.left, p)} {t.op} {print_term(t.right, p + 1)}', p
    if isinstance(t, A.Neg):
        return f'-{print_term(t.arg, 3)}', 3
    if isinstance(t, A.Pow):
        return f'{print_term(t.base, 5)}^{_exp_text(t.exp)}', 4
    if isinstance(t, A.Res):
        return f'res({print_term(t.arg)})', 5
    if isinstance(t, A.Iota):
        return f'iota({print_term(t.arg)})', 5
    if isinstance(t, A.Val):
        return f'v({print_term(t.arg)})', 5
    raise TypeError(f'not a term: {t!r}')


def _lit_text(t):
    v = t.value
    if hasattr(v, 'format') and callable(v.format):
        return v.format()
    return str(v)


_FORM_PREC = {A.Implies: 1, A.Or: 2, A.And: 3}
_FORM_OP = {A.Implies: '->', A.Or: '|', A.And: '&'}


def print_formula(f, ctx=0) -> str:
    text, prec = _formula(f)
    return f'({text})' if prec < ctx else text


def _formula(f):
    if isinstance(f, A.Eq):
        left = print_term(f.left)
        if f.sort != A.k and not sort_forced(f.left) and not sort_forced(f.right):
            left = f'({left} : {f.sort})'
        return f'{left} = {print_term(f.right)}', 5
    if isinstance(f, A.Lt):
        return f'{print_term(f.left)} < {print_term(f.right)}', 5
    if isinstance(f, A.Truth):
        return ('true' if f.value else 'false'), 5
    if isinstance(f, A.Not):
        inner = print_formula(f.arg, 4)
        if isinstance(f.arg, (A.Eq, A.Lt)):
            inner = f'({inner})'
        return f'~{inner}', 4
    if type(f) in _FORM_PREC:
        p = _FORM_PREC[type(f)]
        if isinstance(f, A.Implies):
            lp, rp = p + 1, p
        else:
            lp, rp = p, p + 1
        return f'{print_formula(f.left, lp)} {_FORM_OP[type(f)]} {print_formula(f.right, rp)}', p
    if isinstance(f, A.Quant):
        return f'{f.kind} {f.var}:{f.sort} . {print_formula(f.body, 0)}', 0
    raise TypeError(f'not a formula: {f!r}')


def to_text(node) -> str:
    if isinstance(node, A.FORMULA_TYPES):
        return print_formula(node)
    return print_term(node)
