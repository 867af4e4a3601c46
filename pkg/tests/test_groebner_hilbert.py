import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from curvelab.errors import WorkLimitExceeded
from curvelab.fields import QQ, PrimeField
from curvelab.groebner import IdealBasis, groebner, ideal_member, is_groebner, normal_form
from curvelab.hilbert import acc_explore, hilbert_function, hilbert_poly, hilbert_values, prec, preceq
from curvelab.linalg import rank
from curvelab.mpoly import MPoly, format_poly, monomials_upto


def I(texts, n=3, F=QQ):
    return IdealBasis.of([MPoly.parse(t, n, F) for t in texts])


def names(G):
    return [format_poly(g) for g in G.polys]


def test_groebner_examples():
    assert names(groebner(I(["x1", "x2"]))) == ["x2", "x1"]
    assert names(groebner(I(["x1 - x2^2", "x2 - x3"]))) == ["x2 + -x3", "x3^2 + -x1"]
    assert names(groebner(I(["x^2", "x^3"], 1))) == ["x1^2"]
    assert groebner(I(["x1", "x1 + 1"])).is_unit()


def test_groebner_textbook():
    # x^3 - 2xy, x^2 y - 2y^2 + x under graded lex: basis {x^2, xy, y^2 - x/2}
    G = groebner(I(["x1^3 - 2*x1*x2", "x1^2*x2 - 2*x2^2 + x1"], 2))
    assert sorted(names(G)) == sorted(["x1^2", "x1*x2", "x2^2 + -1/2*x1"])
    assert is_groebner(list(G.polys))


def test_limits():
    with pytest.raises(WorkLimitExceeded):
        groebner(I(["x1^9"]))
    with pytest.raises(WorkLimitExceeded):
        groebner(I(["x1*x2 - x3", "x2^2 - x1", "x3^2 - x2"]), max_pairs=1)


def test_membership_examples():
    assert ideal_member(MPoly.parse("x1^2*x2", 3, QQ), I(["x1"]))
    assert not ideal_member(MPoly.parse("x3", 3, QQ), I(["x1", "x2"]))
    x = MPoly.var(0, 1, QQ)
    assert ideal_member(x * (x ** 2 + 1), I(["x^3 + x"], 1))


def rand_ideal(rng, F, n=3, k=3, deg=3):
    gens = []
    for _ in range(k):
        terms = {m: F.random(rng) for m in monomials_upto(n, deg) if rng.random() < 0.3}
        f = MPoly(terms, n, F)
        if not f.is_zero():
            gens.append(f)
    return IdealBasis.of(gens or [MPoly.var(0, n, F)])


F101 = PrimeField(101)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_groebner_reduced_and_idempotent(seed):
    rng = random.Random(seed)
    Iq = rand_ideal(rng, F101, k=2, deg=2)
    G = groebner(Iq)
    assert is_groebner(list(G.polys))
    lms = G.leading_monomials
    for a in lms:
        for b in lms:
            if a != b:
                assert not all(x <= y for x, y in zip(a, b))
    assert groebner(IdealBasis(G.arity, G.polys, G.field)).polys == G.polys
    for f in Iq.generators:
        assert normal_form(f, G.polys).is_zero()


def _member_by_linear_algebra(f, gens, F, n, D):
    # f in span{m * g : deg(m g) <= D}; sound as a witness only for the univariate case
    cols = monomials_upto(n, D)
    rows = []
    for g in gens:
        for m in monomials_upto(n, D - g.degree):
            rows.append(g.mul_monomial(m).to_vector(cols))
    base = rank(rows, F, len(cols)) if rows else 0
    return rank(rows + [f.to_vector(cols)], F, len(cols)) == base


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_membership_univariate_oracle(seed):
    rng = random.Random(seed)
    F = F101
    g = MPoly({(k,): F.random(rng) for k in range(rng.randint(1, 4))} | {(rng.randint(1, 4),): 1}, 1, F)
    q = MPoly({(k,): F.random(rng) for k in range(3)}, 1, F)
    f = g * q + (MPoly.const(rng.randrange(2), 1, F))
    assert ideal_member(f, IdealBasis.of([g])) == _member_by_linear_algebra(f, [g], F, 1, f.degree + 1)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_membership_monomial_oracle(seed):
    rng = random.Random(seed)
    gens = [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(3)]
    Iq = IdealBasis.of([MPoly({m: 1}, 3, QQ) for m in gens])
    for m in monomials_upto(3, 5):
        divisible = any(all(a <= b for a, b in zip(g, m)) for g in gens)
        assert ideal_member(MPoly({m: 1}, 3, QQ), Iq) == divisible


def test_hilbert_function_examples():
    zero = IdealBasis(3, (), QQ)
    for t in range(8):
        assert hilbert_function(zero, t) == comb(t + 3, 3)
        assert hilbert_function(I(["x1", "x2", "x3"]), t) == 1
        assert hilbert_function(I(["x1"]), t) == comb(t + 2, 2)


def test_hilbert_function_brute_force():
    # oracle: dim K[x]_{<=t} - rank of I_{<=t} spanned by m * g
    Iq = I(["x1*x2 - x3", "x1^2 - x2"])
    G = groebner(Iq)
    for t in range(6):
        cols = monomials_upto(3, t)
        rows = []
        # multiply the Groebner basis elements: their multiples span I_{<=t}
        for g in G.polys:
            for m in monomials_upto(3, t - g.degree) if g.degree <= t else []:
                rows.append(g.mul_monomial(m).to_vector(cols))
        r = rank(rows, QQ, len(cols)) if rows else 0
        assert hilbert_function(G, t) == len(cols) - r


def test_hilbert_poly_examples():
    h = hilbert_poly(I(["x1"]))
    assert h.hp_coeffs == (1, Fraction(3, 2), Fraction(1, 2), 0)
    assert h.ell == (1, Fraction(3, 2), 1, 0)
    assert hilbert_poly(I(["x1", "x2", "x3"])).ell == (1, 0, 0, 0)
    assert hilbert_poly(IdealBasis(1, (), QQ)).ell == (1, 1)
    for t in range(20):
        assert h.hp(t) == Fraction((t + 1) * (t + 2), 2)


def test_hilbert_poly_twisted_cubic():
    # affine twisted cubic: quotient ~ K[s]_{<=3t}, so HP = 3t + 1
    h = hilbert_poly(I(["x2 - x1^2", "x3 - x1^3"]))
    assert h.hp_coeffs[:2] == (1, 3) and h.ell == (1, 3, 0, 0)


def test_prec():
    assert prec((5, 0, 1), (0, 0, 2))
    assert not prec((0, 0, 2), (5, 0, 1))
    assert prec((1, 2), (2, 2))
    assert preceq((1, 2), (1, 2)) and not prec((1, 2), (1, 2))


def test_acc_examples():
    chain = [I(["x^3 + x"], 1), I(["x^2 + 1"], 1), I(["x^3 + x"], 1)]
    assert acc_explore(chain).r0 == 3
    assert acc_explore([I(["x1"]), I(["x1"])]).r0 == 2
    desc = [I([f"x^{k}"], 1) for k in (5, 4, 3, 2, 1)]
    res = acc_explore(desc)
    assert res.r0 is None
    assert res.to_json()["r0"] == "none in range"


def random_monomial_chain(rng, length=5):
    out = []
    for _ in range(length):
        gens = [MPoly({tuple(rng.randint(0, 2) for _ in range(3)): 1}, 3, QQ)
                for _ in range(rng.randint(1, 2))]
        gens = [g for g in gens if not g.is_constant()] or [MPoly.var(0, 3, QQ) ** 3]
        out.append(IdealBasis.of(gens))
    return out


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_partial_sum_ells_decrease(seed):
    res = acc_explore(random_monomial_chain(random.Random(seed)))
    assert res.decreasing
    for a, b in zip(res.ell_tuples, res.ell_tuples[1:]):
        assert preceq(b, a)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_larger_ideal_smaller_hilbert(seed):
    rng = random.Random(seed)
    chain = random_monomial_chain(rng, 2)
    small, big = chain[0], chain[0] + chain[1]
    hs, hb = hilbert_values(small, 8), hilbert_values(big, 8)
    assert all(a >= b for a, b in zip(hs, hb))
    assert hs == sorted(hs)
