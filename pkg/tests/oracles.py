"""Independent reference computations built on sympy and brute force."""

from fractions import Fraction
from math import gcd, lcm

import sympy as sp

from matlang.exact_core import BiPoly, Matrix, UniPoly

X, Y1, Y2, Z = sp.symbols("x y1 y2 z")


def to_sympy_uni(p: UniPoly, var=X):
    return sum(sp.Rational(c.numerator, c.denominator) * var ** k for k, c in enumerate(p.coeffs))


def to_sympy_bi(p: BiPoly, v0=Y1, v1=Y2):
    return sum(sp.Rational(c.numerator, c.denominator) * v0 ** i * v1 ** j for (i, j), c in p.terms.items())


def from_sympy_uni(expr, var=X) -> UniPoly:
    poly = sp.Poly(sp.expand(expr), var)
    coeffs = list(reversed(poly.all_coeffs()))
    return UniPoly([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in coeffs])


def sym_matrix(M: Matrix):
    return sp.Matrix([[sp.Rational(M[i, j].numerator, M[i, j].denominator) for j in range(M.ncols)]
                      for i in range(M.nrows)])


def matpoly_at_scalar(coeffs, var=X):
    """f(xI) as a sympy matrix from rational coefficient lists."""
    r = len(coeffs[0])
    out = sp.zeros(r, r)
    for k, C in enumerate(coeffs):
        out += sp.Matrix(C).applyfunc(sp.Rational) * var ** k
    return out


def char_surface(coeffs, x=X, y=Y1):
    F = matpoly_at_scalar(coeffs, x)
    r = F.shape[0]
    return sp.expand((y * sp.eye(r) - F).det())


def share_root(p, q, var=X) -> bool:
    return sp.degree(sp.gcd(sp.Poly(p, var), sp.Poly(q, var))) > 0


def singular_set_bruteforce(A, B, N):
    """{(n, m) in [-N, N]^2 : det(A^n - B^m) = 0} via sympy matrices."""
    A, B = sp.Matrix(A).applyfunc(sp.Rational), sp.Matrix(B).applyfunc(sp.Rational)
    pa = {n: A ** n for n in range(-N, N + 1)}
    pb = {m: B ** m for m in range(-N, N + 1)}
    return {(n, m) for n in pa for m in pb if (pa[n] - pb[m]).det() == 0}


def _units(n):
    return [a for a in range(n) if gcd(a, n) == 1] if n > 1 else [0]


_PHI = {}


def _phi_coeffs(n):
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first (from sympy)."""
    if n not in _PHI:
        _PHI[n] = [int(c) for c in reversed(sp.Poly(sp.cyclotomic_poly(n, Z), Z).all_coeffs())]
    return _PHI[n]


def _vanishes_mod_phi(coeffs, L):
    """coeffs (lowest first, length L) reduced modulo Phi_L is zero."""
    phi = _phi_coeffs(L)
    d = len(phi) - 1
    work = list(coeffs)
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            for i, p in enumerate(phi):
                work[k - d + i] -= c * p
    return not any(work[:d])


def torsion_points_bruteforce(terms, N):
    """Count pairs (zeta1, zeta2) of exact conductors (n1, n2) <= N on F = sum c y1^i y2^j.

    Each pair is written as (z^a, z^b) with z a primitive lcm(n1, n2)-th root
    of unity; F vanishes there iff the exponent-reduced polynomial in z is
    divisible by the cyclotomic polynomial of that order.
    """
    counts = {}
    for n1 in range(1, N + 1):
        for n2 in range(1, N + 1):
            L = lcm(n1, n2)
            c = 0
            for a in _units(n1):
                for b in _units(n2):
                    e1, e2 = a * (L // n1), b * (L // n2)
                    acc = [Fraction(0)] * L
                    for (i, j), coef in terms.items():
                        acc[(e1 * i + e2 * j) % L] += Fraction(coef)
                    if _vanishes_mod_phi(acc, L):
                        c += 1
            if c:
                counts[(n1, n2)] = c
    return counts


def exponent_kernel_trivial(vectors):
    """True when the integer vectors (columns) are linearly independent over Q."""
    M = sp.Matrix(vectors).T
    return M.rank() == M.shape[1]


def sylvester_res(p, q, var=X):
    """Textbook resultant: determinant of the Sylvester matrix.

    sympy.resultant is not used directly; in sympy 1.14 it returns
    Res(q, p) for some degree patterns, e.g. 8 for Res(x + 2, x^3).
    """
    a = sp.Poly(sp.expand(p), var).all_coeffs()
    b = sp.Poly(sp.expand(q), var).all_coeffs()
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for k in range(n):
        rows.append([0] * k + a + [0] * (size - m - 1 - k))
    for k in range(m):
        rows.append([0] * k + b + [0] * (size - n - 1 - k))
    return sp.expand(sp.Matrix(rows).det(method="berkowitz"))
