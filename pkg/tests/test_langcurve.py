from math import gcd

import mpmath
import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from matlang.exact_core import BiPoly, Matrix, UniPoly, cyclotomic_poly, parse_poly
from matlang.exact_core.bipoly import parse_bipoly
from matlang.langcurve import (
    INFINITE_REFUSAL,
    build_curves,
    det_torsion_scan,
    lemma22_scan,
    lemma24_scan,
    special_factor_scan,
    torsion_points_on_curve,
)
from matlang.matpoly import MatPoly, scalar_profile

from oracles import X, Y1, Y2, char_surface, sylvester_res, to_sympy_bi, to_sympy_uni, torsion_points_bruteforce
from strategies import as_lists, rational_matrices

P = parse_poly
M = Matrix.from_rationals
Z2 = MatPoly.variable(2)
REM16_F = MatPoly([M([[0, 1], [0, 0]]), M([[1, 0], [0, -1]]), Matrix.identity(2)])
REM16_G = MatPoly([M([[0, 0], [1, -1]]), Matrix.zeros(2), Matrix.identity(2)])


def shift(C):
    return MatPoly([-M(C), Matrix.identity(2)])


def cyclo_product(N):
    out = UniPoly.const(1)
    for n in range(1, N + 1):
        out = out * cyclotomic_poly(n)
    return out


# -- curves ------------------------------------------------------------------------------

def test_curves_rank_one():
    cp = build_curves(MatPoly.variable(1), MatPoly.variable(1))
    R = to_sympy_bi(cp.R)
    assert sp.expand(R - (Y2 - Y1)) == 0 or sp.expand(R + (Y2 - Y1)) == 0


def test_curves_remark_pair_degrees():
    cp = build_curves(REM16_F, REM16_G)
    assert cp.degree_budget == 8
    assert cp.R.total_degree <= 8
    assert cp.degree_check.within_exact


def test_curves_shift_T():
    C = [[1, 1], [1, 2]]
    cp = build_curves(Z2, shift(C))
    expected = sylvester_res((Y1 - X) ** 2, Y2 - X ** 2 + 3 * X - 1, X)
    assert sp.expand(to_sympy_bi(cp.T_fg) - expected) == 0


def test_curves_R_against_oracle():
    cp = build_curves(REM16_F, REM16_G)
    Pf = sp.expand((Y1 - X ** 2 - X) * (Y1 - X ** 2 + X))
    Pg = sp.expand((Y2 - X ** 2) * (Y2 - X ** 2 + 1))
    assert sp.expand(to_sympy_bi(cp.R) - sylvester_res(Pf, Pg, X)) == 0


# -- special factors ---------------------------------------------------------------------

def test_special_monomial():
    out = special_factor_scan(parse_bipoly("y1*y2 - 1"))
    assert any(s.form == "monomial" and (s.i, s.j) == (1, 1) and s.rho_conductor == 1 for s in out)


def test_special_ratio():
    out = special_factor_scan(parse_bipoly("y1^2 - y2^3"))
    assert any(s.form == "ratio" and (s.i, s.j) == (2, 3) and s.rho_conductor == 1 for s in out)


def test_special_none():
    assert special_factor_scan(parse_bipoly("y1 + y2 - 3")) == []


def test_special_univariate_content():
    # (y1 + 1)(y2 - 3): content y1 + 1 = Phi_2(y1)
    out = special_factor_scan(parse_bipoly("y1*y2 - 3*y1 + y2 - 3"))
    assert any(s.form == "ratio" and (s.i, s.j) == (1, 0) and s.rho_conductor == 2 for s in out)


# -- torsion points ----------------------------------------------------------------------

def _by_cell(tp):
    out = {}
    for p in tp.points:
        out[(p.n1, p.n2)] = out.get((p.n1, p.n2), 0) + p.count
    return out


def test_torsion_points_line():
    tp = torsion_points_on_curve(parse_bipoly("y1 + y2 - 2"), 12)
    assert tp.count == 1 and _by_cell(tp) == {(1, 1): 1}


def test_torsion_points_circle():
    F = parse_bipoly("y1^2 + y2^2 - 2")
    tp = torsion_points_on_curve(F, 8)
    assert tp.count == 4
    assert _by_cell(tp) == torsion_points_bruteforce(F.terms, 8)


def test_torsion_points_refused():
    with pytest.raises(ValueError, match=INFINITE_REFUSAL):
        torsion_points_on_curve(parse_bipoly("y1 - y2"), 8)


def test_torsion_points_hexagon_line():
    F = parse_bipoly("y1 + y2 + 1")
    tp = torsion_points_on_curve(F, 8)
    assert _by_cell(tp) == {(3, 3): 2}
    assert tp.within_bound


# -- lambda scans ------------------------------------------------------------------------

def test_lemma22_shift_by_identity():
    ls = lemma22_scan(Z2, shift([[1, 0], [0, 1]]), 6)
    assert ls.witness_poly == P("x^2 - x + 1")
    assert ls.count == 2 and ls.bound == 22 * 2 ** 5 * 2 and ls.within_bound
    # oracle: gcd(Phi_n(x), Phi_m(x - 1)) over the grid
    acc = sp.Integer(1)
    for n in range(1, 7):
        for m in range(1, 7):
            acc = sp.lcm(acc, sp.gcd(sp.cyclotomic_poly(n, X), sp.cyclotomic_poly(m, X - 1)))
    assert sp.expand(acc - (X ** 2 - X + 1)) == 0


@pytest.mark.parametrize("N", [1, 3, 6])
def test_lemma22_identical_gives_cyclotomic_locus(N):
    assert lemma22_scan(Z2, Z2, N).witness_poly == cyclo_product(N)


def test_lemma22_remark_pair_sound():
    ls = lemma22_scan(REM16_F, REM16_G, 4)
    for c in ls.certificates:
        assert (ls.witness_poly % c.gcd).is_zero()
    _check_lemma22_roots(REM16_F, REM16_G, ls, 4)


def test_lemma24_shift_by_identity():
    ls = lemma24_scan(Z2, shift([[1, 0], [0, 1]]), 6)
    assert (ls.witness_poly % P("x^2 - x + 1")).is_zero()
    assert ls.bound == 22 * 2 ** 4 * 2


def test_lemma24_nilpotent_shift():
    ls = lemma24_scan(Z2, shift([[0, 1], [0, 0]]), 6)
    assert ls.witness_poly == cyclo_product(6)


def test_det_torsion_shift_by_identity():
    ls = det_torsion_scan(Z2, shift([[1, 0], [0, 1]]), 6)
    assert (ls.witness_poly % P("x^2 - x + 1")).is_zero()


def test_det_torsion_identical():
    assert det_torsion_scan(Z2, Z2, 2).witness_poly == P("x^4 - 1")


def test_det_torsion_remark_pair():
    ls = det_torsion_scan(REM16_F, REM16_G, 4)
    assert ls.witness_poly.is_squarefree()
    d = scalar_profile(REM16_F).det_curve
    with mpmath.workdps(50):
        _det_roots_are_torsion(ls, d)


def _det_roots_are_torsion(ls, d):
    for lam in mpmath.polyroots(_mp_coeffs(ls.witness_poly), maxsteps=200, extraprec=200):
        v = mpmath.polyval(_mp_coeffs(d), lam)
        assert any(abs(v ** n - 1) < 1e-25 for n in range(1, 5))


def test_scan_infinite_cells_recorded():
    # f(xI) = diag(1, x): the eigenvalue 1 is constant, so every lambda qualifies at (1, 1)
    f = MatPoly([M([[1, 0], [0, 0]]), M([[0, 0], [0, 1]])])
    ls = lemma22_scan(f, f, 3)
    assert (1, 1) in ls.infinite


# -- properties --------------------------------------------------------------------------

def _mp_coeffs(p: UniPoly):
    return [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]


def _check_lemma22_roots(f, g, ls, N):
    """Exact: each irreducible factor q of the witness divides some Res_y(P(x, y), Phi_n(y)), n <= N.

    Roots of one irreducible q are Galois conjugate, so one divisibility covers all of them.
    """
    if ls.witness_poly.degree < 1:
        return
    y = sp.Symbol("y")
    w = to_sympy_uni(ls.witness_poly)
    for h in (f, g):
        P = char_surface(as_lists(h), X, y)
        res = [sp.Poly(sylvester_res(P, sp.cyclotomic_poly(n, y), y), X) for n in range(1, N + 1)]
        for q, _ in sp.factor_list(w, X)[1]:
            q = sp.Poly(q, X)
            assert any(r.is_zero or r.rem(q).is_zero for r in res), (h, q)


@given(rational_matrices(lo=-1, hi=1), rational_matrices(lo=-1, hi=1))
def test_lemma22_soundness(C1, C2):
    f, g = MatPoly([C1, Matrix.identity(2)]), MatPoly([C2, Matrix.identity(2)])
    ls = lemma22_scan(f, g, 6)
    assert ls.witness_poly.is_squarefree()
    for c in ls.certificates:
        assert (ls.witness_poly % c.gcd).is_zero()
    _check_lemma22_roots(f, g, ls, 6)


@st.composite
def small_curves(draw):
    terms = {}
    for i in range(3):
        for j in range(3 - i):
            c = draw(st.sampled_from([0, 0, 1, -1, 2]))
            if c:
                terms[(i, j)] = c
    F = BiPoly(terms)
    assume(F.degree(0) >= 1 and F.degree(1) >= 1)
    return F


@given(small_curves())
def test_torsion_points_match_oracle(F):
    if special_factor_scan(F):
        with pytest.raises(ValueError, match=INFINITE_REFUSAL):
            torsion_points_on_curve(F, 6)
        return
    tp = torsion_points_on_curve(F, 6)
    assert _by_cell(tp) == torsion_points_bruteforce(F.terms, 6)
    assert tp.count <= 11 * F.total_degree ** 2


def _phi_of(n, u: BiPoly) -> BiPoly:
    out = BiPoly.const(0)
    for k, c in enumerate(cyclotomic_poly(n).coeffs):
        out = out + BiPoly.const(c) * (u ** k)
    return out


@st.composite
def planted(draw):
    i = draw(st.integers(1, 3))
    j = draw(st.integers(1, 3).filter(lambda j: gcd(i, j) == 1))
    n = draw(st.integers(1, 6))
    form = draw(st.sampled_from(["monomial", "ratio"]))
    y1, y2 = BiPoly.var(0), BiPoly.var(1)
    if form == "monomial":
        B = _phi_of(n, y1 ** i * y2 ** j)
    else:
        # homogenized Phi_n(y1^i / y2^j), the product of y1^i - rho y2^j over conjugates
        phi = cyclotomic_poly(n)
        d = phi.degree
        B = BiPoly.const(0)
        for k, c in enumerate(phi.coeffs):
            B = B + BiPoly.const(c) * y1 ** (i * k) * y2 ** (j * (d - k))
    G = BiPoly({(a, b): draw(st.integers(-2, 2)) for a in range(2) for b in range(2)})
    assume(not G.is_zero())
    return form, i, j, n, B * G


@given(planted())
def test_special_factor_planted(data):
    form, i, j, n, F = data
    found = special_factor_scan(F)
    assert any(s.form == form and (s.i, s.j) == (i, j) and s.rho_conductor == n for s in found)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4), st.integers(1, 8))
def test_eigen_resultant_symmetry_of_scans(c, N):
    # the det-torsion scan is symmetric in f and g
    f = MatPoly([M([[c[0], 0], [0, c[1]]]), Matrix.identity(2)])
    g = MatPoly([M([[c[-1], 0], [0, c[0]]]), Matrix.identity(2)])
    a = det_torsion_scan(f, g, min(N, 4)).witness_poly
    b = det_torsion_scan(g, f, min(N, 4)).witness_poly
    assert a == b


@given(st.builds(lambda a, b: (a, b), rational_matrices(), rational_matrices()))
def test_sylvester_bounds_hold(pair):
    C0, C1 = pair
    f = MatPoly([C0, Matrix.identity(2)])
    g = MatPoly([C1, C0, Matrix.identity(2)])
    cp = build_curves(f, g)
    assert cp.degree_check.within_exact
