"""Concrete syntax for formulas and terms, with sort inference.

Grammar, loosest binding first::

    formula  := disj ['->' formula]
    disj     := conj {('|' | 'or') conj}
    conj     := unary {('&' | 'and') unary}
    unary    := ('~' | 'not') unary | quant | 'true' | 'false' | atom | '(' formula ')'
    quant    := ('forall' | 'exists') IDENT ':' ('K' | 'k' | 'G') '.' formula
    atom     := term ('=' | '!=' | '<') term
    term     := ['-'] ... usual + - * / ^ precedence
    primary  := NUM | NUMi | 'i' | 't' | 'oo' | IDENT
              | ('res' | 'iota' | 'v') '(' term ')' | '(' term [':' SORT] ')'

Numerals and ``i`` are sort-polymorphic; their sort is inferred from
context and defaults to ``k`` when nothing pins it down.  ``(e : K)`` pins
the sort of ``e`` explicitly.  Free variables take their sorts from the
``sorts`` mapping, or from context.
"""

from __future__ import annotations

from ..errors import ParseError, SortError
from ..syntax import TokenStream, parse_exponent
from . import ast as A

RESERVED = {'t', 'i', 'oo', 'res', 'iota', 'v', 'forall', 'exists',
            'true', 'false', 'not', 'and', 'or'}
_FUNCS = {'res': (A.K, A.k), 'iota': (A.k, A.K), 'v': (A.K, A.G)}


class _P:
    """Untyped parse node."""

    __slots__ = ('kind', 'kids', 'data', 'pos', 'sv')

    def __init__(self, kind, kids=(), data=None, pos=0):
        self.kind = kind
        self.kids = list(kids)
        self.data = data
        self.pos = pos
        self.sv = None


class _Parser:
    def __init__(self, text):
        self.ts = TokenStream(text)
        self.text = text

    # formulas -----------------------------------------------------------
    def formula(self):
        left = self.disj()
        tok = self.ts.peek
        if self.ts.accept('->'):
            return _P('implies', [left, self.formula()], pos=tok.pos)
        return left

    def disj(self):
        left = self.conj()
        while self.ts.at('|') or self.ts.at('or'):
            tok = self.ts.next()
            left = _P('or', [left, self.conj()], pos=tok.pos)
        return left

    def conj(self):
        left = self.unary()
        while self.ts.at('&') or self.ts.at('and'):
            tok = self.ts.next()
            left = _P('and', [left, self.unary()], pos=tok.pos)
        return left

    def unary(self):
        tok = self.ts.peek
        if self.ts.accept('~') or self.ts.accept('not'):
            return _P('not', [self.unary()], pos=tok.pos)
        if self.ts.at('forall') or self.ts.at('exists'):
            kind = self.ts.next().text
            name = self.ts.next()
            if name.kind != 'ident' or name.text in RESERVED:
                raise self.ts.error('expected a variable name', name)
            self.ts.expect(':')
            sort = self.sort_name()
            self.ts.expect('.')
            body = self.formula()
            return _P('quant', [body], (kind, name.text, sort), tok.pos)
        if self.ts.accept('true'):
            return _P('truth', data=True, pos=tok.pos)
        if self.ts.accept('false'):
            return _P('truth', data=False, pos=tok.pos)
        if self.ts.at('('):
            start = self.ts.i
            try:
                return self.atom()
            except ParseError as exc:
                first = exc
            self.ts.i = start
            try:
                self.ts.expect('(')
                inner = self.formula()
                self.ts.expect(')')
                return inner
            except ParseError as exc:
                raise first if (first.pos or 0) >= (exc.pos or 0) else exc
        return self.atom()

    def sort_name(self):
        tok = self.ts.next()
        if tok.kind != 'ident' or tok.text not in A.SORTS:
            raise self.ts.error('expected a sort K, k or G', tok)
        return tok.text

    def atom(self):
        left = self.term()
        tok = self.ts.peek
        if self.ts.accept('='):
            return _P('eq', [left, self.term()], pos=tok.pos)
        if self.ts.accept('!='):
            return _P('not', [_P('eq', [left, self.term()], pos=tok.pos)], pos=tok.pos)
        if self.ts.accept('<'):
            return _P('lt', [left, self.term()], pos=tok.pos)
        raise self.ts.error("expected '=', '!=' or '<'")

    # terms ------------------------------------------------------------------
    def term(self):
        left = self.mterm()
        while self.ts.at('+') or self.ts.at('-'):
            tok = self.ts.next()
            left = _P('bin', [left, self.mterm()], tok.text, tok.pos)
        return left

    def mterm(self):
        left = self.tunary()
        while self.ts.at('*') or self.ts.at('/'):
            tok = self.ts.next()
            left = _P('bin', [left, self.tunary()], tok.text, tok.pos)
        return left

    def tunary(self):
        tok = self.ts.peek
        if self.ts.accept('-'):
            return _P('neg', [self.tunary()], pos=tok.pos)
        return self.tpower()

    def tpower(self):
        base = self.primary()
        tok = self.ts.peek
        if self.ts.accept('^'):
            q = parse_exponent(self.ts)
            return _P('pow', [base], q, tok.pos)
        return base

    def primary(self):
        tok = self.ts.next()
        if tok.kind == 'num':
            return _P('num', data=int(tok.text), pos=tok.pos)
        if tok.kind == 'imag':
            n = _P('num', data=int(tok.text[:-1]), pos=tok.pos)
            return _P('bin', [n, _P('imag', pos=tok.pos)], '*', tok.pos)
        if tok.kind == 'ident':
            name = tok.text
            if name == 'i':
                return _P('imag', pos=tok.pos)
            if name == 't':
                return _P('t', pos=tok.pos)
            if name == 'oo':
                return _P('inf', pos=tok.pos)
            if name in _FUNCS:
                self.ts.expect('(')
                arg = self.term()
                self.ts.expect(')')
                return _P(name, [arg], pos=tok.pos)
            if name in RESERVED:
                raise self.ts.error(f'unexpected keyword {name!r}', tok)
            return _P('var', data=name, pos=tok.pos)
        if tok.kind == 'op' and tok.text == '(':
            inner = self.term()
            if self.ts.accept(':'):
                sort = self.sort_name()
                self.ts.expect(')')
                return _P('ascribe', [inner], sort, tok.pos)
            self.ts.expect(')')
            return inner
        raise self.ts.error(f'unexpected {tok.text or "end of input"!r}', tok)


class _Sorts:
    """Union-find over sort variables, some of which are pinned to a sort."""

    def __init__(self):
        self.parent = []
        self.pinned = []
        self.named = []      # free-variable name in the class, if any

    def new(self, sort=None, name=None):
        self.parent.append(len(self.parent))
        self.pinned.append(sort)
        self.named.append(name)
        return len(self.parent) - 1

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def pin(self, a, sort, node, text):
        r = self.find(a)
        if self.pinned[r] is None:
            self.pinned[r] = sort
        elif self.pinned[r] != sort:
            raise _sort_error(f'expected sort {sort}, got {self.pinned[r]}', node, text)

    def union(self, a, b, node, text):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        sa, sb = self.pinned[ra], self.pinned[rb]
        if sa and sb and sa != sb:
            raise _sort_error(f'sort clash: {sa} vs {sb}', node, text)
        self.parent[rb] = ra
        self.pinned[ra] = sa or sb
        self.named[ra] = self.named[ra] or self.named[rb]
        return ra

    def resolve(self, a):
        r = self.find(a)
        return self.pinned[r], self.named[r]


def _sort_error(message, node, text):
    snippet = _snippet(node, text)
    return SortError(f'{message} in {snippet!r} at position {node.pos}', snippet)


def _snippet(node, text):
    return text[node.pos:node.pos + 40].split('\n')[0]


class _Typer:
    def __init__(self, text, sorts):
        self.text = text
        self.uf = _Sorts()
        self.free = {}
        self.declared = dict(sorts or {})

    def term(self, p, env):
        kind = p.kind
        uf = self.uf
        if kind == 'num' or kind == 'imag':
            p.sv = uf.new()
        elif kind == 'var':
            name = p.data
            if name in env:
                p.sv = env[name]
            elif name in self.free:
                p.sv = self.free[name]
            else:
                p.sv = uf.new(self.declared.get(name), name)
                self.free[name] = p.sv
        elif kind == 't':
            p.sv = uf.new(A.K)
        elif kind == 'inf':
            p.sv = uf.new(A.G)
        elif kind == 'bin':
            a = self.term(p.kids[0], env)
            b = self.term(p.kids[1], env)
            p.sv = uf.union(a, b, p, self.text)
        elif kind in ('neg', 'pow'):
            p.sv = self.term(p.kids[0], env)
        elif kind == 'ascribe':
            p.sv = self.term(p.kids[0], env)
            uf.pin(p.sv, p.data, p, self.text)
        elif kind in _FUNCS:
            arg_sort, out_sort = _FUNCS[kind]
            a = self.term(p.kids[0], env)
            uf.pin(a, arg_sort, p.kids[0], self.text)
            p.sv = uf.new(out_sort)
        else:
            raise _sort_error('expected a term', p, self.text)
        return p.sv

    def formula(self, p, env):
        kind = p.kind
        if kind == 'eq':
            a = self.term(p.kids[0], env)
            b = self.term(p.kids[1], env)
            self.uf.union(a, b, p, self.text)
        elif kind == 'lt':
            for kid in p.kids:
                self.uf.pin(self.term(kid, env), A.G, kid, self.text)
        elif kind in ('not', 'and', 'or', 'implies'):
            for kid in p.kids:
                self.formula(kid, env)
        elif kind == 'quant':
            _, name, sort = p.data
            inner = dict(env)
            inner[name] = self.uf.new(sort)
            self.formula(p.kids[0], inner)
        elif kind == 'truth':
            pass
        else:
            raise _sort_error('expected a formula', p, self.text)

    def sort_of(self, p):
        sort, name = self.uf.resolve(p.sv)
        if sort is None:
            if name is not None:
                raise SortError(f'cannot infer the sort of free variable {name!r}; declare it', name)
            sort = A.k
        return sort

    # building typed nodes --------------------------------------------------
    def build_term(self, p, env):
        kind = p.kind
        if kind == 'ascribe':
            return self.build_term(p.kids[0], env)
        sort = self.sort_of(p)
        if kind == 'num':
            return A.Num(p.data, sort)
        if kind == 'imag':
            if sort == A.G:
                raise _sort_error('i is not a value-group element', p, self.text)
            return A.Imag(sort)
        if kind == 'var':
            return A.Var(p.data, sort)
        if kind == 't':
            return A.TConst()
        if kind == 'inf':
            return A.Inf()
        if kind == 'bin':
            left = self.build_term(p.kids[0], env)
            right = self.build_term(p.kids[1], env)
            node = A.BinOp(p.data, left, right, sort)
            check_group_op(node, lambda: _sort_error(
                f'{p.data!r} on the value group needs a numeral operand', p, self.text))
            return node
        if kind == 'neg':
            return A.Neg(self.build_term(p.kids[0], env), sort)
        if kind == 'pow':
            base = self.build_term(p.kids[0], env)
            q = p.data
            if sort == A.G:
                raise _sort_error('powers are not defined on the value group', p, self.text)
            if q.denominator != 1 and not isinstance(base, A.TConst):
                raise _sort_error('fractional exponents are only allowed on t', p, self.text)
            return A.Pow(base, q, sort)
        if kind == 'res':
            return A.Res(self.build_term(p.kids[0], env))
        if kind == 'iota':
            return A.Iota(self.build_term(p.kids[0], env))
        if kind == 'v':
            return A.Val(self.build_term(p.kids[0], env))
        raise _sort_error('expected a term', p, self.text)

    def build_formula(self, p, env):
        kind = p.kind
        if kind == 'eq':
            return A.Eq(self.build_term(p.kids[0], env), self.build_term(p.kids[1], env))
        if kind == 'lt':
            return A.Lt(self.build_term(p.kids[0], env), self.build_term(p.kids[1], env))
        if kind == 'not':
            return A.Not(self.build_formula(p.kids[0], env))
        if kind == 'and':
            return A.And(*(self.build_formula(c, env) for c in p.kids))
        if kind == 'or':
            return A.Or(*(self.build_formula(c, env) for c in p.kids))
        if kind == 'implies':
            return A.Implies(*(self.build_formula(c, env) for c in p.kids))
        if kind == 'quant':
            q, name, sort = p.data
            return A.Quant(q, name, sort, self.build_formula(p.kids[0], env))
        if kind == 'truth':
            return A.Truth(p.data)
        raise _sort_error('expected a formula', p, self.text)


def is_numeral(t) -> bool:
    """Closed term built from numerals only (usable as a scalar on G)."""
    if isinstance(t, A.Num):
        return True
    if isinstance(t, A.Neg):
        return is_numeral(t.arg)
    if isinstance(t, A.BinOp):
        return is_numeral(t.left) and is_numeral(t.right)
    if isinstance(t, A.Lit) and t.sort == A.G:
        return not hasattr(t.value, 'sign')
    return False


def check_group_op(node, make_error):
    if node.sort != A.G:
        return
    if node.op == '*' and not (is_numeral(node.left) or is_numeral(node.right)):
        raise make_error()
    if node.op == '/' and not is_numeral(node.right):
        raise make_error()


def _strip_comments(text):
    lines = []
    for line in text.splitlines():
        lines.append(line.split('#', 1)[0])
    return '\n'.join(lines)


def parse_formula(text: str, sorts=None) -> A.Node:
    """Parse and sort-check a formula; ``sorts`` declares free-variable sorts."""
    text = _strip_comments(text)
    parser = _Parser(text)
    p = parser.formula()
    if parser.ts.peek.kind != 'eof':
        raise parser.ts.error(f'unexpected {parser.ts.peek.text!r}')
    typer = _Typer(text, sorts)
    typer.formula(p, {})
    return typer.build_formula(p, {})


def parse_term(text: str, sorts=None, sort=None) -> A.Node:
    """Parse a single term; ``sort`` optionally pins the sort of the whole term."""
    text = _strip_comments(text)
    parser = _Parser(text)
    p = parser.term()
    if parser.ts.peek.kind != 'eof':
        raise parser.ts.error(f'unexpected {parser.ts.peek.text!r}')
    typer = _Typer(text, sorts)
    sv = typer.term(p, {})
    if sort is not None:
        typer.uf.pin(sv, sort, p, text)
    return typer.build_term(p, {})


def free_variable_sorts(f: A.Node) -> dict:
    """Sorts of the free variables as recorded in a typed AST."""
    out = {}

    def walk(n, bound):
        if isinstance(n, A.Var) and n.name not in bound:
            out[n.name] = n.sort
        elif isinstance(n, A.Quant):
            walk(n.body, bound | {n.var})
            return
        for c in n.children():
            walk(c, bound)

    walk(f, frozenset())
    return out


__all__ = ['parse_formula', 'parse_term', 'free_variable_sorts', 'RESERVED']
