"""Matrix polynomials f = C_d Z^d + ... + C_0 and their scalar-line profiles.

Coefficients multiply powers of the argument on the left.  The torsion
decision works for any dimension: the norm of the characteristic polynomial
bounds the possible root-of-unity orders, and A^L = I is then tested exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_core.bipoly import BiPoly
from .exact_core.cyclotomic import charpoly_norm, cyclotomic_part, cyclotomic_poly, factor_int
from .exact_core.matrix import Matrix
from .exact_core.poly import UniPoly, format_poly, uni_gcd
from .exact_core.rings import QuotientRing, RingElem, rp_divmod, rp_from
from .functions import AlgebraicFunction2, RationalFunction


def _frac_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m.map(Fraction)
    return Matrix.from_rationals(m)


class MatPoly:
    """f(Z) = sum_k coeffs[k] Z^k with rational r x r coefficient matrices."""

    __slots__ = ("coeffs", "r")

    def __init__(self, coeffs: Sequence):
        mats = [_frac_matrix(c) for c in coeffs]
        while mats and mats[-1].is_zero():
            mats.pop()
        if not mats:
            raise ValueError("matrix polynomial must be nonzero")
        r = mats[0].nrows
        for m in mats:
            if m.shape != (r, r):
                raise ValueError("coefficient matrices must all be square of one dimension")
        self.coeffs: Tuple[Matrix, ...] = tuple(mats)
        self.r = r

    @classmethod
    def variable(cls, r: int) -> "MatPoly":
        """f(Z) = Z."""
        return cls([Matrix.zeros(r), Matrix.identity(r)])

    @classmethod
    def scalar(cls, r: int, coeffs: Sequence) -> "MatPoly":
        """sum c_k I Z^k from rational c_k."""
        one = Matrix.identity(r)
        return cls([one * Fraction(c) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, MatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _padded(self, n: int) -> List[Matrix]:
        return list(self.coeffs) + [Matrix.zeros(self.r)] * (n - len(self.coeffs))

    def __add__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly([a + b for a, b in zip(self._padded(n), other._padded(n))])

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return MatPoly([a - b for a, b in zip(self._padded(n), other._padded(n))])

    def has_scalar_coeffs(self) -> bool:
        return all(c.is_scalar() for c in self.coeffs)

    def leading_nonsingular(self) -> bool:
        return self.coeffs[-1].det() != 0

    def poly_matrix(self) -> Matrix:
        """f(xI) as a matrix of UniPoly."""
        r = self.r
        return Matrix([
            [UniPoly([c[i, j] for c in self.coeffs]) for j in range(r)]
            for i in range(r)
        ])

    def __call__(self, A: Matrix) -> Matrix:
        return eval_at_matrix(self, A)

    def to_lists(self):
        return [[[str(c) for c in row] for row in m.rows] for m in self.coeffs]

    def __repr__(self) -> str:
        return f"MatPoly(r={self.r}, deg={self.degree})"


@dataclass(frozen=True)
class ScalarProfile:
    """f(xI), its characteristic surface det(yI - f(xI)) and its determinant."""

    r: int
    poly_matrix: Matrix
    char_surface: BiPoly
    det_curve: UniPoly
    trace: UniPoly

    def char_coeffs(self) -> List[UniPoly]:
        """Coefficients of y^k in the characteristic surface, as polynomials in x."""
        return self.char_surface.coeffs_in(1)


def scalar_profile(f: MatPoly) -> ScalarProfile:
    pm = f.poly_matrix()
    r = f.r
    y = BiPoly.var(1)
    zero = BiPoly.const(0)
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            e = -BiPoly.from_uni(pm[i, j], 0)
            if i == j:
                e = e + y
            row.append(e if not e.is_zero() else zero)
        rows.append(row)
    surface = Matrix(rows).det()
    det_curve = pm.det()
    if r % 2:
        expected = -surface.eval_var(1, 0)
    else:
        expected = surface.eval_var(1, 0)
    if expected != det_curve:
        raise AssertionError("scalar_profile: determinant and characteristic surface disagree")
    return ScalarProfile(r, pm, surface, det_curve, pm.trace())


def eval_at_matrix(f: MatPoly, A: Matrix) -> Matrix:
    """sum C_k A^k, coefficients on the left (Horner from the top)."""
    if A.shape != (f.r, f.r):
        raise ValueError(f"dimension mismatch: polynomial has r={f.r}, matrix is {A.nrows}x{A.ncols}")
    acc = None
    for c in reversed(f.coeffs):
        acc = c if acc is None else acc * A + c
    # constant polynomial: coerce into the ring of A
    if len(f.coeffs) == 1:
        one = A._one()
        acc = acc.map(lambda v: one * v)
    return acc


def charpoly(A: Matrix) -> list:
    """Coefficients (lowest first, monic) of det(yI - A) by Faddeev-LeVerrier."""
    n = A.nrows
    one = A._one()
    ident = Matrix.identity(n, one)
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    M = Matrix.zeros(n, zero=one * 0)
    for k in range(1, n + 1):
        M = A * M + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(A * M).trace() / k
    return coeffs


# -- torsion ---------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionReport:
    """Torsion decision for a matrix, valid at every root of ``locus``.

    For rational matrices ``locus`` is None.  When the answer differs between
    roots of the modulus, ``branches`` holds one report per piece and the
    top-level flags summarize them (torsion only if every piece is).
    """

    is_torsion: bool
    order: Optional[int]
    diagonalizable: Optional[bool]
    reason: Optional[str] = None
    locus: Optional[UniPoly] = None
    eigen_data: Tuple[Tuple[int, int], ...] = ()
    charpoly_norm: Optional[UniPoly] = None
    branches: Tuple["TorsionReport", ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        out = {
            "is_torsion": self.is_torsion,
            "order": self.order,
            "diagonalizable": self.diagonalizable,
            "reason": self.reason,
            "locus": None if self.locus is None else format_poly(self.locus, "t"),
            "eigen_conductors": [list(p) for p in self.eigen_data],
        }
        if self.branches:
            out["branches"] = [b.as_dict() for b in self.branches]
        return out


_RAT_MODULUS = UniPoly.x()

_NOT_ROOT = "eigenvalue not a root of unity"
_NOT_DIAG = "not diagonalizable"
_SINGULAR = "singular"


def _ring_of(A: Matrix) -> Tuple[QuotientRing, bool]:
    for c in A.entries():
        if isinstance(c, RingElem):
            return c.ring, False
    return QuotientRing(_RAT_MODULUS, check=False), True


def _lift(A: Matrix, ring: QuotientRing) -> Matrix:
    return A.map(ring)


def _locus_of_entries(M: Matrix, modulus: UniPoly) -> UniPoly:
    """Roots of ``modulus`` at which every entry of M vanishes."""
    g = modulus
    for c in M.entries():
        if g.degree <= 0:
            break
        if not c.is_zero():
            g = uni_gcd(g, c.value)
    return g.monic()


def _identity_locus(A: Matrix, locus: UniPoly, k: int) -> UniPoly:
    ring = QuotientRing(locus, check=False)
    B = _lift(A, ring)
    P = B ** k - Matrix.identity(B.nrows, ring.one)
    return _locus_of_entries(P, locus)


def _refine_orders(A: Matrix, locus: UniPoly, k: int) -> List[Tuple[UniPoly, int]]:
    """Pieces of ``locus`` with the least order at each root, given A^k = I there."""
    for p in sorted(factor_int(k)):
        z = _identity_locus(A, locus, k // p)
        if z.degree <= 0:
            continue
        if z.degree == locus.degree:
            return _refine_orders(A, locus, k // p)
        return _refine_orders(A, z, k // p) + _refine_orders(A, locus.exact_div(z).monic(), k)
    return [(locus, k)]


def _all_roots_of_unity_locus(chi: list, ring: QuotientRing, conductors: Dict[int, int]) -> UniPoly:
    """Roots of the modulus where every eigenvalue is a root of unity."""
    r = len(chi) - 1
    prod = UniPoly.const(1)
    for n in conductors:
        prod = prod * cyclotomic_poly(n) ** r
    _, rem = rp_divmod(rp_from(ring, prod.coeffs), chi)
    g = ring.modulus
    for c in rem:
        if g.degree <= 0:
            break
        if not c.is_zero():
            g = uni_gcd(g, c.value)
    return g.monic()


def _diag_locus_2x2(A: Matrix, ring: QuotientRing) -> UniPoly:
    """Roots where a 2x2 matrix is diagonalizable: nonzero discriminant or scalar."""
    tr = A.trace()
    disc = tr * tr - A.det() * 4
    dz = disc.zero_locus() if not disc.is_zero() else ring.modulus
    if dz.degree <= 0:
        return ring.modulus
    rz = QuotientRing(dz, check=False)
    B = _lift(A, rz)
    scal = _locus_of_entries(B - Matrix.identity(2, rz.one) * (rz(tr) / 2), dz)
    return ring.modulus.exact_div(dz).monic() * scal


def _pieces(modulus: UniPoly, locus: UniPoly):
    """(locus, cofactor) split with trivial parts dropped."""
    inside = locus.monic()
    outside = modulus.exact_div(inside).monic() if inside.degree > 0 else modulus
    return inside if inside.degree > 0 else None, outside if outside.degree > 0 else None


def _eigen_conductors(A: Matrix, ring: QuotientRing) -> Tuple[UniPoly, Tuple[Tuple[int, int], ...]]:
    chi = charpoly(A)
    H = charpoly_norm(chi, ring)
    mults, _ = cyclotomic_part(H)
    return H, tuple(sorted(mults.items()))


def torsion_branches(A: Matrix) -> List[TorsionReport]:
    """Exact torsion decision, one report per piece of the modulus."""
    if not A.is_square():
        raise ValueError("torsion needs a square matrix")
    ring, rational = _ring_of(A)
    A = _lift(A, ring)
    m = ring.modulus
    out: List[TorsionReport] = []
    loc = (lambda p: None) if rational else (lambda p: p)

    det = A.det()
    sing, rest = _pieces(m, det.zero_locus() if not det.is_zero() else m)
    if sing is not None:
        out.append(TorsionReport(False, None, None, _SINGULAR, loc(sing)))
    if rest is None:
        return out
    ring = QuotientRing(rest, check=False)
    A = _lift(A, ring)
    chi = charpoly(A)
    H = charpoly_norm(chi, ring)
    mults, _ = cyclotomic_part(H)
    L = 1
    for n in mults:
        L = lcm(L, n)
    tors, non = _pieces(rest, _identity_locus(A, rest, L) if mults else UniPoly.const(1))
    if tors is not None:
        for piece, k in _refine_orders(A, tors, L):
            pr = QuotientRing(piece, check=False)
            Hp, conds = _eigen_conductors(_lift(A, pr), pr)
            out.append(TorsionReport(True, k, True, None, loc(piece), conds, Hp))
    if non is not None:
        nr = QuotientRing(non, check=False)
        An = _lift(A, nr)
        chi_n = charpoly(An)
        unit, bad = _pieces(non, _all_roots_of_unity_locus(chi_n, nr, mults))
        for piece, reason in ((unit, _NOT_DIAG), (bad, _NOT_ROOT)):
            if piece is None:
                continue
            pr = QuotientRing(piece, check=False)
            Ap = _lift(A, pr)
            Hp, conds = _eigen_conductors(Ap, pr)
            if reason == _NOT_DIAG:
                out.append(TorsionReport(False, None, False, reason, loc(piece), conds, Hp))
                continue
            if A.nrows != 2:
                out.append(TorsionReport(False, None, None, reason, loc(piece), conds, Hp))
                continue
            dg, ndg = _pieces(piece, _diag_locus_2x2(Ap, pr))
            for sub, flag in ((dg, True), (ndg, False)):
                if sub is not None:
                    sr = QuotientRing(sub, check=False)
                    Hs, cs = _eigen_conductors(_lift(A, sr), sr)
                    out.append(TorsionReport(False, None, flag, reason, loc(sub), cs, Hs))
    out.sort(key=lambda rep: rep.locus.sort_key() if rep.locus is not None else (0,))
    return out


def torsion_report(A: Matrix) -> TorsionReport:
    """Torsion decision for A; rational or over one quotient ring.

    The order is the least k >= 1 with A^k = I.  Over a reducible modulus the
    order is the lcm over roots, reported only if A is torsion at every root.
    """
    parts = torsion_branches(A)
    if len(parts) == 1:
        return parts[0]
    ok = all(p.is_torsion for p in parts)
    order = None
    if ok:
        order = 1
        for p in parts:
            order = lcm(order, p.order)
    diag = True if ok else (False if any(p.diagonalizable is False for p in parts) else None)
    modulus = UniPoly.const(1)
    for p in parts:
        modulus = modulus * p.locus
    reasons = sorted({p.reason for p in parts if p.reason})
    return TorsionReport(
        ok, order, diag, "; ".join(reasons) or None, modulus, (), None, tuple(parts)
    )


def torsion_locus(A: Matrix, k: int) -> UniPoly:
    """Roots of the modulus at which A^k = I (an empty locus is the constant 1)."""
    ring, _ = _ring_of(A)
    return _identity_locus(_lift(A, ring), ring.modulus, k)


# -- eigenvalues of 2x2 profiles --------------------------------------------------

def eigen_functions_2x2(profile: ScalarProfile) -> Tuple[AlgebraicFunction2, AlgebraicFunction2]:
    """The two roots (t +- sqrt(t^2 - 4d))/2 of y^2 - t y + d, t = trace, d = det."""
    if profile.r != 2:
        raise ValueError("eigen_functions_2x2 needs r = 2")
    t, d = profile.trace, profile.det_curve
    disc = t * t - d * 4
    half = RationalFunction(t * Fraction(1, 2))
    mu1 = AlgebraicFunction2(half, RationalFunction.const(Fraction(1, 2)), disc)
    mu2 = AlgebraicFunction2(half, RationalFunction.const(Fraction(-1, 2)), disc)
    return mu1, mu2
