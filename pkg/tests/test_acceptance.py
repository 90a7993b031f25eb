"""Acceptance criteria, one test each, with case counts and time limits.

Every check prints a single ``PASS``/``FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary.  Run standalone with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import math
import random
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path


sys.path.insert(0, str(Path(__file__).parent))  # standalone runs

from oracles import (F5, F7, F101, FRAGMENT_SORTS, QQ, SData, fragment_assignment,  # noqa: E402
                     random_fragment_sentence, random_sdata, res_of_quotient_by_one_minus)
from resfield.cli import main as cli_main  # noqa: E402
from resfield.encoders import (DiophSystem, InK, MPoly, NotInK, check_h10_witness,  # noqa: E402
                               compute_Sab, defk_check, encode_finite_set, modelcomp_identity_check,
                               witness_from_polynomial_solution)
from resfield.fields import QQI, FieldElem  # noqa: E402
from resfield.logic.evaluator import eval_formula  # noqa: E402
from resfield.logic.parser import parse_formula  # noqa: E402
from resfield.poly import Poly, poly_eval  # noqa: E402
from resfield.series import Series, extract_pa, lift_iota, residue_pi, total_res  # noqa: E402
from resfield.valext import ExtRatFunc, gauss_residue, gauss_val  # noqa: E402

RESULTS: list[str] = []


def report(name, limit, fn):
    start = time.perf_counter()
    failures, cases = fn()
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < limit
    status = 'PASS' if ok else 'FAIL'
    line = f'{status} {name}: {cases} cases, {len(failures)} mismatches, {elapsed:.2f}s (limit {limit}s)'
    if failures:
        line += f'; first: {failures[0]}'
    RESULTS.append(line)
    print(line)
    return ok


def _one_minus_t(y):
    F = y.field
    return Series.const(F, F.one) - Series.t_power(F, 1) * lift_iota(y)


# 1 -----------------------------------------------------------------------------

def polynomial_part():
    failures, cases = [], 0
    for F in (QQ, F101):
        rng = random.Random(1000 + getattr(F, 'p', 0))
        for _ in range(500):
            e = rng.choice([1, 1, 2, 3])
            d = random_sdata(F, rng, e=e, min_shift=-10 * e, max_shift=3, max_deg=4)
            a = d.series()
            if a.valuation() < -10:
                continue
            y = FieldElem(F, F.sample(rng))
            lhs = total_res(a / _one_minus_t(y))
            rhs = poly_eval(extract_pa(a), y)
            # independent check: expand a*(1 + ty + t^2y^2 + ...) with the oracle
            pa_oracle = F.zero
            for n in range(11):
                pa_oracle = F.add(pa_oracle, F.mul(d.coeff(-n), F.power(y.value, n)))
            cases += 1
            if lhs != rhs or rhs.value != pa_oracle:
                failures.append((F, a.format(), y.format()))
    return failures, cases


def test_polynomial_part_identity():
    assert report('res(a/(1 - t*y)) = p_a(y) over Q and F101', 10, polynomial_part)


# 2 -----------------------------------------------------------------------------

def power_identity():
    failures, cases = [], 0
    for n in range(21):
        for beta in F101.enumerate():
            cases += 1
            if not modelcomp_identity_check(n, FieldElem(F101, beta)):
                failures.append((n, beta))
    rng = random.Random(2)
    for _ in range(100):
        beta = FieldElem(QQ, QQ.sample(rng))
        for n in range(21):
            cases += 1
            if not modelcomp_identity_check(n, beta):
                failures.append((n, beta.format()))
    return failures, cases


def test_power_identity():
    assert report('res(t^-n/(1 - t*beta)) = beta^n, n <= 20', 5, power_identity)


# 3 -----------------------------------------------------------------------------

def finite_set_round_trip():
    failures, cases = [], 0
    for F in (QQ, F101):
        rng = random.Random(3 + getattr(F, 'p', 0))
        for _ in range(200):
            elems = {F.sample(rng) for _ in range(rng.randint(0, 8))}
            a, b = encode_finite_set(F, [FieldElem(F, x) for x in elems])
            r = compute_Sab(a, b, seed=rng.randrange(1 << 30))
            cases += 1
            if r.all_of_k or {x.value for x in r.elements} != elems:
                failures.append((F, sorted(map(str, elems))))
    return failures, cases


def test_finite_set_round_trip():
    assert report('S_{a,b} of encode_finite_set(S) = S over Q and F101', 10, finite_set_round_trip)


# 4 -----------------------------------------------------------------------------

def sab_dichotomy():
    failures, cases = [], 0
    rng = random.Random(4)
    everything = set(F5.enumerate())
    all_of_k = 0
    while cases < 1000:
        e = rng.choice([1, 1, 2])
        a = random_sdata(F5, rng, e=e, min_shift=-8, max_shift=3, max_deg=3, nonzero=rng.random() < 0.95)
        b = random_sdata(F5, rng, e=e, min_shift=1, max_shift=4, max_deg=2)
        r = compute_Sab(a.series(), b.series())
        brute = {beta for beta in everything if not res_of_quotient_by_one_minus(a, b, beta)}
        cases += 1
        all_of_k += r.all_of_k
        if r.all_of_k != (brute == everything) or (not r.all_of_k and {x.value for x in r.elements} != brute):
            failures.append((a.series().format(), b.series().format()))
    if not all_of_k:
        failures.append('the all-of-k branch was never exercised')
    return failures, cases


def test_sab_dichotomy():
    assert report('S_{a,b} finite or all of F5, against per-beta series division', 20, sab_dichotomy)


# 5 -----------------------------------------------------------------------------

def _rand_mpoly(rng, m, terms=3, max_exp=2, coef=4):
    out = MPoly(m)
    for _ in range(terms):
        e = tuple(rng.randint(0, max_exp) for _ in range(m + 1))
        out = out + MPoly(m, {e: rng.randint(-coef, coef)})
    return out


def _system_vanishing_on(sol, rng):
    """Integer polynomials pinning X_i = sol_i plus random combinations of them."""
    m = len(sol)
    pins = []
    for i, f in enumerate(sol, 1):
        den = 1
        for c in f.coeffs:
            den = math.lcm(den, c.denominator)
        poly = MPoly.var(m, i) * den
        for k, c in enumerate(f.coeffs):
            poly = poly - MPoly.var(m, 0) ** k * int(c * den)
        pins.append(poly)
    extra = MPoly(m)
    for pin in pins:
        extra = extra + _rand_mpoly(rng, m) * pin
    polys = pins + ([extra] if extra else [])
    rng.shuffle(polys)
    return DiophSystem(m, polys)


def h10_round_trip():
    failures, cases = [], 0
    rng = random.Random(5)
    for _ in range(100):
        m = rng.randint(1, 3)
        sol = [Poly(QQ, [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(rng.randint(0, 7))])
               for _ in range(m)]
        system = _system_vanishing_on(sol, rng)
        witnesses = witness_from_polynomial_solution(sol)
        cases += 1
        if not check_h10_witness(system, witnesses, field=QQ).ok:
            failures.append(('rejected a solution', [f.format('T') for f in sol]))
        for _ in range(10):
            i = rng.randrange(m)
            k = rng.randint(0, 7)
            delta = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 3))
            bumped = list(witnesses)
            bumped[i] = bumped[i] + Series.t_power(QQ, -k) * Series.const(QQ, delta)
            cases += 1
            if check_h10_witness(system, bumped, field=QQ).ok:
                failures.append(('accepted a perturbation', i, k, delta))
    return failures, cases


def test_h10_round_trip():
    assert report('polynomial solutions accepted, 10 perturbations each rejected', 15, h10_round_trip)


# 6 -----------------------------------------------------------------------------

def definable_constants():
    failures = []
    rng = random.Random(6)
    nonconstant = 0
    while nonconstant < 200:
        e = rng.choice([1, 2, 3])
        d = random_sdata(QQ, rng, e=e, min_shift=-6, max_shift=6, max_deg=3)
        x = d.series()
        if x.is_constant():
            continue
        nonconstant += 1
        r = defk_check(x)
        if not isinstance(r, NotInK):
            failures.append(('constant verdict', x.format()))
            continue
        # x*y = t^-q * x as s-data, re-expanded by the oracle; res(y) = 0 since q != 0
        k = r.q * e
        xy = SData(QQ, e, d.shift - int(k), d.num, d.den)
        res_xy, res_x = xy.res(), d.res()
        res_y = total_res(r.witness).value
        if k.denominator != 1 or r.witness != Series.t_power(QQ, -r.q) or res_xy == res_x * res_y \
                or res_xy != r.res_xy.value:
            failures.append(('bad witness', x.format(), r.q))
    for _ in range(200):
        alpha = FieldElem(QQ, QQ.sample(rng))
        r = defk_check(lift_iota(alpha) * (Series.t_power(QQ, 1) + 1) / (Series.t_power(QQ, 1) + 1))
        if r != InK(alpha):
            failures.append(('constant missed', alpha.format()))
    return failures, nonconstant + 200


def test_definable_constants():
    assert report('defk_check witnesses for non-constants, InK for constants', 10, definable_constants)


# 7 -----------------------------------------------------------------------------

def _rand_ext_poly(rng):
    coeffs = {}
    for i in range(rng.randint(0, 3) + 1):
        if rng.random() < 0.85:
            coeffs[i] = random_sdata(QQ, rng, e=rng.choice([1, 2]), min_shift=-4, max_shift=4, max_deg=2).series()
    return ExtRatFunc.polynomial(QQ, coeffs or {0: Series.const(QQ, 1)})


def gauss_lemma():
    failures, cases = [], 0
    rng = random.Random(7)
    for _ in range(500):
        f, g = _rand_ext_poly(rng), _rand_ext_poly(rng)
        cases += 1
        if gauss_val(f * g) != gauss_val(f) + gauss_val(g):
            failures.append(('value', f.format(), g.format()))
            continue
        uf = f * ExtRatFunc.from_series(Series.t_power(QQ, -gauss_val(f)))
        ug = g * ExtRatFunc.from_series(Series.t_power(QQ, -gauss_val(g)))
        if gauss_residue(uf * ug) != gauss_residue(uf) * gauss_residue(ug):
            failures.append(('residue', f.format(), g.format()))
    return failures, cases


def test_gauss_lemma():
    assert report('Gauss valuation and residue are multiplicative', 10, gauss_lemma)


# 8 -----------------------------------------------------------------------------

def axioms():
    failures, cases = [], 0
    for F in (QQ, QQI, F101):
        rng = random.Random(8 + getattr(F, 'p', len(str(F))))
        for _ in range(1000):
            a = random_sdata(F, rng, e=rng.choice([1, 2]), min_shift=-4, max_shift=4, max_deg=2).series()
            b = random_sdata(F, rng, min_shift=-4, max_shift=4, max_deg=2).series()
            lam, mu = FieldElem(F, F.sample(rng)), FieldElem(F, F.sample(rng))
            cases += 1
            if a.valuation() >= 0 and total_res(a) != residue_pi(a):
                failures.append(('res on O', F, a.format()))
            if total_res(lift_iota(lam) * a + lift_iota(mu) * b) != lam * total_res(a) + mu * total_res(b):
                failures.append(('linearity', F, a.format(), b.format()))
            if residue_pi(lift_iota(lam)) != lam:
                failures.append(('section', F, lam.format()))
    return failures, cases


def test_axioms():
    assert report('res|O = pi, k-linearity of res, pi(iota(x)) = x on Q, Qi, F101', 10, axioms)


# 9 -----------------------------------------------------------------------------

def evaluator_coherence():
    failures, cases = [], 0
    for F in (F5, F7):
        rng = random.Random(9 + F.p)
        for _ in range(100):
            text = random_fragment_sentence(rng, F.p)
            f = parse_formula(text, FRAGMENT_SORTS)
            sigma = fragment_assignment(F, rng)
            cases += 1
            if eval_formula(f, sigma, 'exhaustive') != eval_formula(f, sigma, 'identity'):
                failures.append((F, text))
    return failures, cases


def test_evaluator_coherence():
    assert report('exhaustive and identity paths agree on F5 and F7', 10, evaluator_coherence)


# 10 ----------------------------------------------------------------------------

def cli_golden(tmp_dir):
    sentence = Path(tmp_dir) / 'sentence.lres'
    sentence.write_text('exists x:K . v(x) < 0\n', encoding='utf-8')
    cases = [
        (['res', 't^-2/(1-3*t)', '--field', 'Q'], 0, '9\n'),
        (['encode-set', '1,2', '--field', 'Q'], 0, 'a = t^-2 - 3*t^-1 + 2\nb = t\n'),
        (['eval', str(sentence), '--field', 'Q'], 3, ''),
    ]
    failures = []
    for argv, code, expected in cases:
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            got = cli_main(argv)
        if (got, out.getvalue()) != (code, expected):
            failures.append((argv, got, out.getvalue()))
        if code == 3 and 'UnsupportedQuantifier' not in err.getvalue():
            failures.append((argv, 'missing diagnostic'))
    return failures, len(cases)


def test_cli_golden(tmp_path):
    assert report('CLI golden outputs', 5, lambda: cli_golden(tmp_path))


if __name__ == '__main__':
    import tempfile
    checks = [
        ('res(a/(1 - t*y)) = p_a(y) over Q and F101', 10, polynomial_part),
        ('res(t^-n/(1 - t*beta)) = beta^n, n <= 20', 5, power_identity),
        ('S_{a,b} of encode_finite_set(S) = S over Q and F101', 10, finite_set_round_trip),
        ('S_{a,b} finite or all of F5, against per-beta series division', 20, sab_dichotomy),
        ('polynomial solutions accepted, 10 perturbations each rejected', 15, h10_round_trip),
        ('defk_check witnesses for non-constants, InK for constants', 10, definable_constants),
        ('Gauss valuation and residue are multiplicative', 10, gauss_lemma),
        ('res|O = pi, k-linearity of res, pi(iota(x)) = x on Q, Qi, F101', 10, axioms),
        ('exhaustive and identity paths agree on F5 and F7', 10, evaluator_coherence),
    ]
    ok = all([report(*c) for c in checks])
    with tempfile.TemporaryDirectory() as tmp:
        ok = report('CLI golden outputs', 5, lambda: cli_golden(tmp)) and ok
    sys.exit(0 if ok else 1)
