from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from matlang.exact_core import (
    BiPoly,
    QuotientRing,
    UniPoly,
    coprime_basis,
    cyclotomic_part,
    cyclotomic_poly,
    parse_poly,
    resultant_elim,
    ring_split,
    sylvester_resultant,
    uni_gcd,
    unity_order,
)
from matlang.exact_core.poly import uni_resultant

from oracles import X, Y1, Y2, sylvester_res, to_sympy_bi, to_sympy_uni

P = parse_poly


def bi(terms):
    return BiPoly(terms)


# -- gcd ---------------------------------------------------------------------------------

def test_gcd_shared_root_one():
    assert uni_gcd(P("x^2 - 1"), P("x^3 - 1")) == P("x - 1")


def test_gcd_shifted_hexagon():
    # (x-1)^2 + (x-1) + 1 expands to x^2 - x + 1
    assert uni_gcd(P("x^2 - x + 1"), P("x^2 - 2x + 1 + x - 1 + 1")) == P("x^2 - x + 1")


def test_gcd_with_zero_is_monic():
    assert uni_gcd(P("3x^2 + 6"), UniPoly()) == P("x^2 + 2")


def test_gcd_zero_zero_rejected():
    with pytest.raises(ValueError):
        uni_gcd(UniPoly(), UniPoly())


# -- resultants --------------------------------------------------------------------------

def test_resultant_linear_substitution():
    p = bi({(0, 1): 1, (1, 0): -1})          # y1 - x
    q = bi({(0, 1): 1, (2, 0): -1})          # y2 - x^2
    R = resultant_elim(p, q, eliminate=0)
    expected = sylvester_res(Y1 - X, Y2 - X ** 2, X)
    assert sp.expand(to_sympy_bi(R) - expected) == 0
    assert sp.expand(expected - (Y2 - Y1 ** 2)) == 0 or sp.expand(expected + (Y2 - Y1 ** 2)) == 0


def test_resultant_degree_eight_vanishing():
    p = sp.expand((Y1 - X ** 2 - X) * (Y1 - X ** 2 + X))
    q = sp.expand((Y2 - X ** 2) * (Y2 - X ** 2 + 1))
    pb = _bipoly_from(p, X, Y1)
    qb = _bipoly_from(q, X, Y2)
    R = resultant_elim(pb, qb, eliminate=0)
    assert R.total_degree == 8
    for k in range(-10, 10):
        t = Fraction(k, 3)
        assert R(t * (t + 1), t * t) == 0


def test_resultant_partial_degrees():
    # Res_x(p, q) has degree <= deg_x q in y1 and <= deg_x p in y2 when p is linear in y1
    p = _bipoly_from(sp.expand(Y1 - X ** 3 - 2 * X), X, Y1)
    q = _bipoly_from(sp.expand(Y2 ** 2 - X ** 2 - 1), X, Y2)
    R = resultant_elim(p, q, eliminate=0)
    assert R.degree(0) <= 2 and R.degree(1) <= 3 * 2


def test_resultant_zero_input_rejected():
    with pytest.raises(ValueError, match="zero polynomial has no resultant"):
        resultant_elim(BiPoly(), bi({(1, 0): 1}), eliminate=0)


def test_resultant_matches_sylvester_determinant():
    p = _bipoly_from(sp.expand((Y1 - X ** 2 - X) * (Y1 - X + 2)), X, Y1)
    q = _bipoly_from(sp.expand(Y2 * X ** 2 - X + Y2 - 3), X, Y2)
    assert resultant_elim(p, q, 0) == sylvester_resultant(p, q, 0)


def _bipoly_from(expr, x, y):
    poly = sp.Poly(expr, x, y)
    return BiPoly({m: Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for m, c in poly.terms()})


# -- cyclotomics -------------------------------------------------------------------------

@pytest.mark.parametrize("n,text", [(1, "x - 1"), (6, "x^2 - x + 1"), (12, "x^4 - x^2 + 1")])
def test_cyclotomic_closed_forms(n, text):
    assert cyclotomic_poly(n) == P(text)


def test_cyclotomic_against_sympy():
    for n in range(1, 61):
        assert sp.expand(to_sympy_uni(cyclotomic_poly(n)) - sp.cyclotomic_poly(n, X)) == 0


def test_cyclotomic_part_examples():
    mults, cof = cyclotomic_part(P("x^2 + x + 1") * P("x - 2"))
    assert dict(mults) == {3: 1} and cof == P("x - 2")
    mults, cof = cyclotomic_part(P("x^4 - x^2 + 1"))
    assert dict(mults) == {12: 1} and cof == UniPoly.const(1)
    mults, cof = cyclotomic_part(P("x - 2"))
    assert dict(mults) == {} and cof == P("x - 2")


# -- coprime bases -----------------------------------------------------------------------

def _exps(fac, base_texts):
    idx = {b: k for k, b in enumerate(fac.base)}
    return [tuple(e[idx[P(t)]] if P(t) in idx else 0 for t in base_texts) for e in fac.exponents]


def test_coprime_basis_refines():
    fac = coprime_basis([P("x^2 - 1"), P("x^2 - x")])
    assert set(fac.base) == {P("x - 1"), P("x + 1"), P("x")}
    assert _exps(fac, ["x - 1", "x + 1", "x"]) == [(1, 1, 0), (1, 0, 1)]


def test_coprime_basis_powers():
    fac = coprime_basis([P("x^2"), P("x^3")])
    assert list(fac.base) == [P("x")]
    assert [tuple(e) for e in fac.exponents] == [(2,), (3,)]


def test_coprime_basis_equal_inputs():
    h = P("x^2") * P("x^2 - 1")
    fac = coprime_basis([h, h])
    assert tuple(fac.exponents[0]) == tuple(fac.exponents[1])


# -- unity order -------------------------------------------------------------------------

def test_unity_order_rationals():
    assert unity_order(Fraction(-1)) == 2
    assert unity_order(Fraction(1, 2)) is None
    with pytest.raises(ValueError):
        unity_order(Fraction(0))


def test_unity_order_generator_of_phi5():
    K = QuotientRing(cyclotomic_poly(5))
    assert unity_order(K.gen) == 5


def test_unity_order_mixed_roots():
    K = QuotientRing(cyclotomic_poly(3) * cyclotomic_poly(4))
    assert unity_order(K.gen) == 12
    K = QuotientRing(cyclotomic_poly(3) * P("x - 2"))
    assert unity_order(K.gen) is None


# -- ring splitting ----------------------------------------------------------------------

def test_ring_split_linear():
    K = QuotientRing(P("x - 1") * P("x - 2"))
    a, b = ring_split(K(P("x - 1")))
    assert {a.modulus, b.modulus} == {P("x - 1"), P("x - 2")}


def test_ring_split_cyclotomic():
    K = QuotientRing(cyclotomic_poly(3) * cyclotomic_poly(4))
    a, b = ring_split(K(cyclotomic_poly(3)))
    assert {a.modulus, b.modulus} == {cyclotomic_poly(3), cyclotomic_poly(4)}
    # CRT consistency: the element reduces to the same residue on each piece
    assert a.is_zero() and b.value == cyclotomic_poly(3) % cyclotomic_poly(4)


def test_ring_split_invertible_rejected():
    K = QuotientRing(P("x - 1") * P("x - 2"))
    with pytest.raises(ValueError, match="no split"):
        ring_split(K(P("x + 5")))


# -- properties --------------------------------------------------------------------------

small = st.integers(-4, 4)
coeff_lists = st.lists(small, min_size=2, max_size=4).filter(lambda c: c[-1] != 0)


@st.composite
def bipolys(draw, max_x=2, max_y=2):
    terms = {}
    for i in range(max_x + 1):
        for j in range(max_y + 1):
            c = draw(small)
            if c:
                terms[(i, j)] = c
    dx = draw(st.integers(1, max_x))
    terms[(dx, draw(st.integers(0, max_y)))] = draw(st.sampled_from([-2, -1, 1, 2]))
    return BiPoly(terms)


@given(bipolys(), bipolys(), st.fractions(max_denominator=5).filter(lambda u: abs(u) < 6))
def test_resultant_specialization(p, q, u):
    R = resultant_elim(p, q, eliminate=0, separate=False)
    pu, qu = p.eval_var(1, u), q.eval_var(1, u)
    if pu.degree != p.degree(0) or qu.degree != q.degree(0):
        return
    expected = sylvester_res(to_sympy_uni(pu), to_sympy_uni(qu), X)
    got = R(u)
    assert sp.Rational(got.numerator, got.denominator) == expected


@given(bipolys(), bipolys())
def test_resultant_swap_sign(p, q):
    a, b = p.degree(0), q.degree(0)
    R1 = resultant_elim(p, q, eliminate=0, separate=False)
    R2 = resultant_elim(q, p, eliminate=0, separate=False)
    assert R1 == R2 * (-1) ** (a * b)


@given(st.lists(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 10, 12]), max_size=3), coeff_lists)
def test_cyclotomic_part_reassembles(ns, cof):
    p = UniPoly(cof)
    for n in ns:
        p = p * cyclotomic_poly(n)
    mults, rest = cyclotomic_part(p)
    back = rest
    for n, k in mults.items():
        back = back * cyclotomic_poly(n) ** k
    assert back == p.monic()
    for n in ns:
        assert mults.get(n, 0) >= ns.count(n)


@given(st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12]), st.integers(1, 30))
def test_unity_order_minimal(n, e):
    K = QuotientRing(cyclotomic_poly(n))
    c = K.gen ** e
    k = unity_order(c)
    assert k is not None
    assert (c ** k).is_one()
    for d in range(1, k):
        if k % d == 0:
            assert not (c ** d).is_one()


@given(st.lists(coeff_lists, min_size=1, max_size=4))
def test_coprime_basis_identity(lists):
    polys = [UniPoly(c) for c in lists]
    fac = coprime_basis(polys)
    for a in range(len(fac.base)):
        assert fac.base[a].degree > 0
        for b in range(a + 1, len(fac.base)):
            assert uni_gcd(fac.base[a], fac.base[b]).degree == 0
    for k, p in enumerate(polys):
        assert fac.reconstruct(k) == p


@given(coeff_lists, coeff_lists)
def test_uni_resultant_matches_sympy(a, b):
    p, q = UniPoly(a), UniPoly(b)
    r = uni_resultant(p, q)
    assert sp.Rational(r.numerator, r.denominator) == sylvester_res(to_sympy_uni(p), to_sympy_uni(q), X)
