"""Command-line front end.

Exit codes: 0 success, 1 a check came out false, 2 usage/parse/arithmetic
error, 3 the question lies outside the decidable fragments.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import encoders as E
from .errors import (InfiniteEnumeration, ParseError, ResFieldError, SortError,
                     UnsupportedQuantifier)
from .fields import parse_field
from .logic import ast as A
from .logic.evaluator import STRATEGIES, Assignment, eval_formula
from .logic.parser import free_variable_sorts, parse_formula
from .logic.printer import to_text
from .series import coeff_at, extract_pa, res0, total_res
from .syntax import parse_field_elem, parse_series
from .valext import gauss_residue, gauss_val, infinitesimal_val, parse_ext
from .values import INF, format_value

OK, FALSE, USAGE, UNDECIDED = 0, 1, 2, 3


class _Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _need_field(args):
    if args.field is None:
        raise _Failure(USAGE, f'{args.command} needs --field Q|Qi|Fp:<p>')
    try:
        return parse_field(args.field)
    except ValueError as exc:
        raise _Failure(USAGE, str(exc)) from exc


def _read(path):
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise _Failure(USAGE, f'cannot read {path}: {exc.strerror}') from exc


def _rational(text):
    try:
        return Fraction(text.strip())
    except ValueError:
        raise _Failure(USAGE, f'not a rational number: {text!r}') from None


# commands: each returns (lines, exit code) ----------------------------------

def cmd_res(args):
    return [total_res(parse_series(_need_field(args), args.expr)).format()], OK


def cmd_res0(args):
    return [res0(parse_series(_need_field(args), args.expr)).format()], OK


def cmd_val(args):
    return [format_value(parse_series(_need_field(args), args.expr).valuation())], OK


def cmd_coeff(args):
    a = parse_series(_need_field(args), args.expr)
    return [coeff_at(a, _rational(args.q)).format()], OK


def cmd_pa(args):
    return [extract_pa(parse_series(_need_field(args), args.expr)).format()], OK


def cmd_sab(args):
    F = _need_field(args)
    r = E.compute_Sab(parse_series(F, args.a), parse_series(F, args.b), seed=args.seed)
    return [f'n = {r.n}', f'p = {r.p_ab.format()}', f'S = {"k" if r.all_of_k else r.format()}'], OK


def cmd_encode_set(args):
    F = _need_field(args)
    items = [s for s in (part.strip() for part in args.elements.split(',')) if s]
    a, b = E.encode_finite_set(F, [parse_field_elem(F, s) for s in items])
    return [f'a = {a.format()}', f'b = {b.format()}'], OK


def cmd_defk(args):
    x = parse_series(_need_field(args), args.expr)
    r = E.defk_check(x)
    if isinstance(r, E.InK):
        return [f'in k: {r.alpha.format()}'], OK
    return ['not in k',
            f'q = {r.q}',
            f'y = {r.witness.format()}',
            f'res(x*y) = {r.res_xy.format()}',
            f'res(x)*res(y) = {r.res_x_res_y.format()}'], FALSE


def cmd_gauss_val(args):
    F = parse_ext(_need_field(args), args.expr)
    w = gauss_val(F)
    lines = [format_value(w)]
    if w == 0:
        lines.append(f'residue = {gauss_residue(F).format()}')
    return lines, OK


def cmd_inf_val(args):
    return [str(infinitesimal_val(parse_ext(_need_field(args), args.expr)))], OK


def cmd_encode_h10(args):
    return [to_text(E.encode_h10(E.DiophSystem.parse(_read(args.file))))], OK


def cmd_check_witness(args):
    F = _need_field(args)
    system = E.DiophSystem.parse(_read(args.file))
    lines = [line.split('#', 1)[0].strip() for line in _read(args.witness_file).splitlines()]
    witnesses = [parse_series(F, line) for line in lines if line]
    r = E.check_h10_witness(system, witnesses, field=F)
    out = ['accepted' if r.ok else 'rejected']
    out += [f'p_a{i} = {p.format("T")}' for i, p in enumerate(r.pa, 1)]
    out += [f'f{j} = {p.format("T")}' for j, p in enumerate(r.composed, 1)]
    return out, OK if r.ok else FALSE


def _parse_binding(text):
    name, sep, expr = text.partition('=')
    if not sep:
        raise _Failure(USAGE, f'--bind expects var=EXPR, got {text!r}')
    name, _, sort = name.strip().partition(':')
    if sort and sort not in A.SORTS:
        raise _Failure(USAGE, f'unknown sort {sort!r} in --bind')
    return name, sort or None, expr.strip()


def _binding_value(F, sort, expr):
    if sort == A.K:
        return parse_series(F, expr)
    if sort == A.k:
        return parse_field_elem(F, expr)
    return INF if expr == 'oo' else _rational(expr)


def cmd_eval(args):
    F = _need_field(args)
    bindings = [_parse_binding(b) for b in args.bind]
    declared = {name: sort for name, sort, _ in bindings if sort}
    f = parse_formula(_read(args.file), declared)
    sorts = free_variable_sorts(f)
    values = {}
    for name, _, expr in bindings:
        if name not in sorts:
            raise _Failure(USAGE, f'{name} is not a free variable of the formula')
        values[name] = _binding_value(F, sorts[name], expr)
    missing = sorted(set(sorts) - set(values))
    if missing:
        raise _Failure(USAGE, f'unbound free variables: {", ".join(missing)}')
    truth = eval_formula(f, Assignment(F, values), strategy=args.strategy)
    return ['true' if truth else 'false'], OK if truth else FALSE


def cmd_modelcomp_check(args):
    F = _need_field(args)
    if args.n < 0:
        raise _Failure(USAGE, 'N must be a natural number')
    beta = parse_field_elem(F, args.beta)
    ok = E.modelcomp_identity_check(args.n, beta)
    return ['true' if ok else 'false'], OK if ok else FALSE


# argument parsing ---------------------------------------------------------------

def build_parser():
    top = argparse.ArgumentParser(prog='resfield', description='Residue maps on Puiseux series and related reductions.')

    def add_globals(p, default):
        p.add_argument('--field', default=default, help='coefficient field: Q, Qi or Fp:<p>')
        p.add_argument('--seed', type=int, default=default, help='seed for randomized root finding')
        p.add_argument('--output', default=default, help='write the result here instead of stdout')

    add_globals(top, None)
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, argparse.SUPPRESS)
    sub = top.add_subparsers(dest='command', required=True, metavar='COMMAND')

    def command(name, fn, help_text, *positionals):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for pos in positionals:
            p.add_argument(pos)
        p.set_defaults(run=fn)
        return p

    command('res', cmd_res, 'total residue (constant coefficient)', 'expr')
    command('res0', cmd_res0, 'coefficient of t^-1', 'expr')
    command('val', cmd_val, 'valuation', 'expr')
    command('coeff', cmd_coeff, 'coefficient at exponent Q', 'expr', 'q')
    command('pa', cmd_pa, 'polynomial of non-positive integer coefficients', 'expr')
    command('sab', cmd_sab, 'the set S_{a,b}', 'a', 'b')
    command('encode-set', cmd_encode_set, 'pair (a, b) coding a finite set', 'elements')
    command('defk', cmd_defk, 'membership in the constants, with a witness otherwise', 'expr')
    command('gauss-val', cmd_gauss_val, 'Gauss valuation on K(X)', 'expr')
    command('inf-val', cmd_inf_val, 'valuation with X infinitesimal', 'expr')
    command('encode-h10', cmd_encode_h10, 'sentence for a polynomial system', 'file')
    command('check-witness', cmd_check_witness, 'check series witnesses for a system', 'file', 'witness_file')
    p = command('eval', cmd_eval, 'evaluate a sentence', 'file')
    p.add_argument('--bind', action='append', default=[], metavar='VAR[:SORT]=EXPR')
    p.add_argument('--strategy', choices=STRATEGIES, default='auto')
    p = command('modelcomp-check', cmd_modelcomp_check, 'check res(t^-n/(1 - t*beta)) = beta^n')
    p.add_argument('n', type=int)
    p.add_argument('beta')
    return top


def _diagnostic(exc):
    if isinstance(exc, ParseError) and exc.text is not None and exc.pos is not None:
        line_start = exc.text.rfind('\n', 0, exc.pos) + 1
        line_end = exc.text.find('\n', exc.pos)
        line = exc.text[line_start:line_end if line_end >= 0 else None]
        return f'error: {exc}\n  {line}\n  {" " * (exc.pos - line_start)}^'
    return f'error: {exc}'


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    if args.seed is None:
        args.seed = 0
    try:
        lines, code = args.run(args)
    except _Failure as exc:
        print(f'error: {exc}', file=sys.stderr)
        return exc.code
    except (UnsupportedQuantifier, InfiniteEnumeration) as exc:
        print(f'undecided: {type(exc).__name__}: {exc}', file=sys.stderr)
        return UNDECIDED
    except (ResFieldError, ValueError, TypeError, ArithmeticError, SortError) as exc:
        print(_diagnostic(exc), file=sys.stderr)
        return USAGE
    text = ''.join(line + '\n' for line in lines)
    if args.output:
        Path(args.output).write_text(text, encoding='utf-8')
    else:
        sys.stdout.write(text)
    return code


if __name__ == '__main__':
    sys.exit(main())
