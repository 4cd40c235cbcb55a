from fractions import Fraction

from hypothesis import strategies as st

from matlang.exact_core import Matrix
from matlang.matpoly import MatPoly

small = st.integers(-3, 3)


@st.composite
def rational_matrices(draw, r=2, lo=-3, hi=3, nonsingular=False):
    rows = [[draw(st.integers(lo, hi)) for _ in range(r)] for _ in range(r)]
    M = Matrix.from_rationals(rows)
    if nonsingular and M.det() == 0:
        # spectral radius of M is below r * max|entry|, so the shift is invertible
        M = M + Matrix.identity(r) * (r * max(abs(lo), abs(hi)) + 1)
    return M


@st.composite
def matpolys(draw, r=2, max_deg=3, nonsingular_lead=False):
    d = draw(st.integers(1, max_deg))
    coeffs = [draw(rational_matrices(r)) for _ in range(d)]
    coeffs.append(draw(rational_matrices(r, nonsingular=True)) if nonsingular_lead
                  else draw(rational_matrices(r).filter(lambda M: not M.is_zero())))
    return MatPoly(coeffs)


def as_lists(f: MatPoly):
    return [[[f.coeffs[k][i, j] for j in range(f.r)] for i in range(f.r)] for k in range(f.degree + 1)]


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def F(x):
    return Fraction(x)
