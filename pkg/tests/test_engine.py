"""Groebner engine against independent oracles: Macaulay matrices, Buchberger's
criterion, and sympy's Groebner bases."""

import random

import pytest
import sympy
from hypothesis import given, strategies as st

from hyperarr.groebner import Budget, BudgetExhausted, budget_scope, groebner
from hyperarr.oracle import (buchberger_criterion, check_basis, engine_sweep, lead_term_dims,
                             macaulay_dims, normal_form, random_ideal)
from hyperarr.ring import Ring, parse_poly


def _sympy_basis(gens, ring):
    xs = sympy.symbols(f"x0:{ring.nvars}")
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(map(str, xs), xs))) for g in gens]
    kw = {"modulus": ring.char} if ring.char else {}
    G = sympy.groebner(exprs, *xs, order=ring.order.kind, **kw)
    out = set()
    for e in G.exprs:
        p = sympy.Poly(e, *xs, **kw)
        lc = p.coeffs(order=ring.order.kind)[0]
        terms = {}
        for m, c in p.terms():
            c = (int(c) * pow(int(lc), -1, ring.char)) % ring.char if ring.char else sympy.Rational(c, lc)
            terms[m] = c
        out.add(frozenset(terms.items()))
    return out


def _our_basis(gens, ring):
    out = set()
    for g in groebner(gens, ring).polys():
        g = g.monic()
        out.add(frozenset((e, c if ring.char else sympy.Rational(c.numerator, c.denominator))
                          for e, c in g.terms.items()))
    return out


@pytest.mark.parametrize("k", range(12))
def test_reduced_basis_matches_sympy(k):
    rng = random.Random(f"sympy:{k}")
    ring = Ring(rng.choice([2, 3]), rng.choice([32003, 101, 0]), order=rng.choice(["grevlex", "lex"]))
    gens = random_ideal(ring, rng, count=rng.randint(2, 3), max_degree=2)
    assert _our_basis(gens, ring) == _sympy_basis(gens, ring)


def test_macaulay_oracle_on_known_ideal():
    R = Ring(2)
    gens = [parse_poly("x0*x1", R), parse_poly("x2^2", R)]
    # complete intersection of type (2,2): dim I_t = 2 C(t, 2) - C(t - 2, 2) pattern
    assert macaulay_dims(gens, R, 4) == [0, 0, 2, 6, 11]
    G = groebner(gens, R).polys()
    assert lead_term_dims(G, R, 4) == [0, 0, 2, 6, 11]


def test_sweep_small():
    checked, problems = engine_sweep(20, seed=5)
    assert checked == 20 and problems == []


@given(st.integers(0, 10 ** 6), st.sampled_from(["grevlex", "lex"]), st.sampled_from([32003, 7, 0]))
def test_random_bases_pass_oracles(seed, order, char):
    rng = random.Random(seed)
    ring = Ring(rng.choice([1, 2]), char, order=order)
    gens = random_ideal(ring, rng, count=rng.randint(1, 3), max_degree=3)
    G = groebner(gens, ring).polys()
    assert check_basis(gens, G, 5) == []


def test_buchberger_criterion_detects_non_basis():
    R = Ring(2)
    gens = [parse_poly("x0^2 - x1*x2", R), parse_poly("x0*x1 - x2^2", R)]
    assert not buchberger_criterion(gens)
    assert buchberger_criterion(groebner(gens, R).polys())


def test_normal_form_of_member_is_zero():
    R = Ring(2)
    G = groebner([parse_poly("x0^2 - x1*x2", R), parse_poly("x0*x1 - x2^2", R)], R).polys()
    f = parse_poly("x0^2 - x1*x2", R) * parse_poly("x0 + 3*x2", R)
    assert normal_form(f, G) == {}


def test_budget_degree_limit():
    R = Ring(3)
    gens = [R.random_form(3, random.Random(k)) for k in range(3)]
    with pytest.raises(BudgetExhausted):
        groebner(gens, R, budget=Budget(max_degree=4))


def test_ambient_budget_applies():
    R = Ring(3)
    gens = [R.random_form(3, random.Random(k)) for k in range(3)]
    with budget_scope(Budget(max_degree=4)):
        with pytest.raises(BudgetExhausted):
            groebner(gens, R)
    assert len(groebner(gens, R)) > 0
