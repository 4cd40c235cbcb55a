"""Enumeration pipelines for torsion points (f(A), g(A)).

Candidate eigenvalues come from the lambda scans of ``langcurve``; candidate
matrices are standard-basis representatives of each Jordan shape, carried as
families over quotient rings Q[v]/(L) and verified by exact powering.  A
family with modulus L stands for deg L complex points; ``count`` is the number
of conjugacy classes among them.

Only representatives in the standard basis are tested.  When the coefficients
of f and g are scalar that loses nothing, since f(VAV^-1) = V f(A) V^-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exact_core.bipoly import BiPoly, resultant_elim
from .exact_core.cyclotomic import cyclotomic_poly, norm_poly
from .exact_core.factor import coprime_basis
from .exact_core.matrix import Matrix
from .exact_core.poly import UniPoly, format_poly, uni_gcd, uni_lcm
from .exact_core.rings import QuotientRing, RingElem, branches, rp_from, rp_gcd
from .independence import spectral_independence
from .langcurve import build_curves, det_torsion_scan, lemma22_scan, lemma24_scan, special_factor_scan
from .matpoly import MatPoly, charpoly, eval_at_matrix, scalar_profile, torsion_branches, torsion_report

COUNTEREXAMPLE_REF = "singular C admits infinitely many torsion points: (diag(l, 1), [[l, -1], [0, 1]]) for l a primitive p-th root of unity, p prime"


@dataclass(frozen=True)
class TorsionSolution:
    jordan_shape: str
    eigenvalues: Tuple[RingElem, ...]
    eigen_moduli: Tuple[UniPoly, ...]
    modulus: UniPoly
    A: Matrix
    orders: Tuple[int, int]
    count: int
    conjugacy_key: Tuple[str, str, bool]

    @property
    def diagonalizable(self) -> bool:
        return self.conjugacy_key[2]

    def verify(self, f: MatPoly, g: MatPoly) -> bool:
        n, m = self.orders
        ident = Matrix.identity(self.A.nrows, self.A._one())
        return eval_at_matrix(f, self.A) ** n == ident and eval_at_matrix(g, self.A) ** m == ident

    def describe(self) -> str:
        ev = ", ".join(format_poly(e.value, "v") for e in self.eigenvalues)
        return (f"{self.jordan_shape}({ev}) over v with {format_poly(self.modulus, 'v')} = 0; "
                f"orders (n, m) = {self.orders}; {self.count} class(es)")

    def as_dict(self) -> dict:
        return {
            "jordan_shape": self.jordan_shape,
            "eigenvalues": [format_poly(e.value, "v") for e in self.eigenvalues],
            "eigen_moduli": [format_poly(p, "x") for p in self.eigen_moduli],
            "modulus": format_poly(self.modulus, "v"),
            "A": [[format_poly(c.value, "v") for c in row] for row in self.A.rows],
            "orders": list(self.orders),
            "count": self.count,
            "conjugacy_key": {"shape": self.conjugacy_key[0], "charpoly": self.conjugacy_key[1],
                              "diagonalizable": self.conjugacy_key[2]},
        }


@dataclass(frozen=True)
class BoundReport:
    L: int
    J: int
    theorem_bound: int
    found_count: int
    conductor_bound: int

    @property
    def within_bound(self) -> bool:
        return self.found_count <= self.theorem_bound

    def as_dict(self) -> dict:
        return {
            "L": self.L,
            "J": self.J,
            "theorem_bound": self.theorem_bound,
            "found_count": self.found_count,
            "within_bound": self.within_bound,
            "conductor_bound": self.conductor_bound,
        }


@dataclass(frozen=True)
class Refusal:
    condition: str
    witness: str

    def as_dict(self) -> dict:
        return {"condition": self.condition, "witness": self.witness}


@dataclass(frozen=True)
class EngineResult:
    """Unpacks as (solutions, bounds)."""

    solutions: Tuple[TorsionSolution, ...]
    bounds: BoundReport
    refusal: Optional[Refusal] = None
    hypotheses: Tuple[Tuple[str, str], ...] = ()
    candidate_locus: Optional[UniPoly] = None
    notes: Tuple[str, ...] = ()

    def __iter__(self) -> Iterator:
        yield list(self.solutions)
        yield self.bounds

    @property
    def refused(self) -> bool:
        return self.refusal is not None

    def as_dict(self) -> dict:
        return {
            "solutions": [s.as_dict() for s in self.solutions],
            "bounds": self.bounds.as_dict(),
            "refusal": None if self.refusal is None else self.refusal.as_dict(),
            "hypotheses": [list(h) for h in self.hypotheses],
            "candidate_locus": None if self.candidate_locus is None else format_poly(self.candidate_locus),
            "notes": list(self.notes),
        }


# -- constants ---------------------------------------------------------------------------


def _L(r: int, df: int, dg: int) -> int:
    return 22 * r ** 5 * (df + dg) * df * dg


def _J(df: int, dg: int) -> int:
    return 2 ** 12 * (df + dg) * df * dg


def thm_c_bound(r: int, df: int, dg: int) -> int:
    return 2 * _L(r, df, dg) ** r


def thm_d_bound(df: int, dg: int) -> int:
    return 2 ** 25 * (df + dg) ** 2 * (df * dg) ** 2


COR17_BOUND = 2 ** 27


# -- families ----------------------------------------------------------------------------


def _cells(f: MatPoly, g: MatPoly, A: Matrix) -> List[Tuple[UniPoly, int, int]]:
    """(locus, n, m) pieces of A's modulus where f(A)^n = I and g(A)^m = I, n, m least."""
    out = []
    for rf in torsion_branches(eval_at_matrix(f, A)):
        if not rf.is_torsion:
            continue
        ring = QuotientRing(rf.locus, check=False)
        Af = A.map(ring)
        for rg in torsion_branches(eval_at_matrix(g, Af)):
            if rg.is_torsion:
                out.append((rg.locus, rf.order, rg.order))
    return out


def _class_poly(A: Matrix) -> UniPoly:
    """prod over the points of the modulus of det(xI - A), monic in x."""
    chi = charpoly(A)
    ring = A._one().ring
    if ring.degree == 0:
        raise ValueError("empty family")
    # variables: 0 = v (ring generator), 1 = x
    F = BiPoly()
    for k, c in enumerate(chi):
        F = F + BiPoly.from_uni(c.value, 0) * BiPoly.var(1) ** k
    if F.degree(0) < 1:
        out = UniPoly.const(1)
        base = UniPoly([c.value[0] for c in chi])
        for _ in range(ring.degree):
            out = out * base
        return out.monic()
    return resultant_elim(BiPoly.from_uni(ring.modulus, 0), F, eliminate=0, separate=False).monic()


def _minimal_moduli(eigs: Sequence[RingElem]) -> Tuple[UniPoly, ...]:
    return tuple(norm_poly(e).squarefree_part().monic() for e in eigs)


def _solution(shape: str, eigs: Sequence[RingElem], A: Matrix, n: int, m: int, count: int) -> TorsionSolution:
    diag = shape != "jordan_block"
    # the product of det(xI - A) over the family's points, with the shape
    key = (shape, format_poly(_class_poly(A), "x"), diag)
    modulus = A._one().ring.modulus
    return TorsionSolution(shape, tuple(eigs), _minimal_moduli(eigs), modulus, A, (n, m), count, key)


def _restrict(A: Matrix, eigs: Sequence[RingElem], locus: UniPoly):
    ring = QuotientRing(locus, check=False)
    return A.map(ring), [ring(e) for e in eigs]


def _remove(locus: UniPoly, taken: UniPoly) -> UniPoly:
    g = uni_gcd(locus, taken)
    return locus.exact_div(g).monic() if g.degree > 0 else locus


def _reps_families(f, g, shape, reps, eigs_of, count_of=None) -> List[TorsionSolution]:
    """Try each representative in turn; later ones only on points not yet covered."""
    out = []
    taken = UniPoly.const(1)
    for A in reps:
        for locus, n, m in _cells(f, g, A):
            locus = _remove(locus, taken)
            if locus.degree < 1:
                continue
            Ar, er = _restrict(A, eigs_of(A), locus)
            cnt = locus.degree if count_of is None else count_of(locus)
            out.append(_solution(shape, er, Ar, n, m, cnt))
            taken = uni_lcm(taken, locus)
    return out


def _single_eigen(f: MatPoly, g: MatPoly, piece: UniPoly, shapes: Sequence[str]) -> List[TorsionSolution]:
    K = QuotientRing(piece, check=False)
    t, one, zero = K.gen, K.one, K.zero
    out = []
    if "scalar" in shapes:
        A = Matrix([[t, zero], [zero, t]])
        out += _reps_families(f, g, "scalar", [A], lambda M: [M[0, 0], M[1, 1]])
    if "jordan_block" in shapes:
        up = Matrix([[t, one], [zero, t]])
        low = Matrix([[t, zero], [one, t]])
        out += _reps_families(f, g, "jordan_block", [up, low], lambda M: [M[0, 0]])
    return out


def _shifted(w: UniPoly, c: int) -> BiPoly:
    """w(z - c t) with variables 0 = t, 1 = z."""
    arg = BiPoly.var(1) - BiPoly.var(0) * c
    acc = BiPoly()
    for coeff in reversed(w.coeffs):
        acc = acc * arg + coeff
    return acc


def _pair_ring(wa: UniPoly, wb: UniPoly, same: bool) -> Tuple[UniPoly, int]:
    """Squarefree M(z) whose roots are lambda2 + c lambda1 over ordered pairs, diagonal removed."""
    for c in range(2, 50):
        M = resultant_elim(BiPoly.from_uni(wa, 0), _shifted(wb, c), eliminate=0, separate=False).monic()
        if same:
            # points lambda1 = lambda2 = lambda sit at z = (1 + c) lambda
            diag = wa.compose(UniPoly([0, Fraction(1, 1 + c)])).monic()
            M = M.exact_div(diag).monic()
        if M.degree < 1:
            return M, c
        if M.is_squarefree():
            return M, c
    raise ArithmeticError("no separating multiplier found for the eigenvalue pair ring")


def _pair_eigenvalues(wa: UniPoly, wb: UniPoly, M: UniPoly, c: int):
    """Pieces of M with lambda1 as an element of Q[z]/(piece)."""
    q = _shifted(wb, c).coeffs_in(0)

    def compute(ring: QuotientRing):
        g = rp_gcd(rp_from(ring, wa.coeffs), [ring(p) for p in q])
        if len(g) != 2:
            raise ArithmeticError("pair ring does not separate eigenvalues")
        return -g[0]

    return branches(M, compute)


def _distinct_pairs(f: MatPoly, g: MatPoly, wa: UniPoly, wb: UniPoly) -> List[TorsionSolution]:
    same = wa == wb
    M, c = _pair_ring(wa, wb, same)
    if M.degree < 1:
        return []
    out = []
    for piece, lam1 in _pair_eigenvalues(wa, wb, M, c):
        R = lam1.ring
        lam2 = R.gen - lam1 * c
        zero = R.zero
        D = Matrix([[lam1, zero], [zero, lam2]])
        if same:
            # the swap z -> lambda1 + c lambda2 permutes the points; classes are its orbits
            sigma = lam1 + lam2 * c
            out += _orbit_families(f, g, D, sigma)
        else:
            Dp = Matrix([[lam2, zero], [zero, lam1]])
            out += _reps_families(f, g, "diagonal", [D, Dp], lambda X: [X[0, 0], X[1, 1]])
    return out


def _pull_back(locus: UniPoly, sigma: RingElem) -> UniPoly:
    """Points p of the ring's modulus with sigma(p) a root of ``locus``."""
    ring = sigma.ring
    val = locus(sigma)
    if not isinstance(val, RingElem):
        val = ring(val)
    return val.zero_locus() if not val.is_zero() else ring.modulus


def _orbit_families(f, g, D: Matrix, sigma: RingElem) -> List[TorsionSolution]:
    out = []
    seen = UniPoly.const(1)  # points already covered, closed under sigma
    for locus, n, m in sorted(_cells(f, g, D), key=lambda c: (c[1], c[2])):
        locus = _remove(locus, seen)
        if locus.degree < 1:
            continue
        mirror = _pull_back(locus, sigma)
        both = uni_gcd(locus, mirror)
        count = locus.degree - both.degree // 2
        Ar, er = _restrict(D, [D[0, 0], D[1, 1]], locus)
        out.append(_solution("diagonal", er, Ar, n, m, count))
        seen = uni_lcm(seen, uni_lcm(locus, mirror))
    return out


def _scan_factors(scans) -> List[UniPoly]:
    """Certificate gcds: factors of the locus, so pair rings stay small."""
    return [c.gcd for s in scans for c in s.certificates]


def _enumerate_2x2(f: MatPoly, g: MatPoly, locus: UniPoly, shapes: Sequence[str],
                   factors: Sequence[UniPoly] = ()) -> List[TorsionSolution]:
    if locus.degree < 1:
        return []
    # refine along the known factors; the base multiplies back to the squarefree locus
    pieces = list(coprime_basis([locus] + [p for p in factors if p.degree > 0]).base)
    sols: List[TorsionSolution] = []
    for p in pieces:
        sols += _single_eigen(f, g, p, shapes)
    if "diagonal" in shapes:
        for i, a in enumerate(pieces):
            for b in pieces[i:]:
                sols += _distinct_pairs(f, g, a, b)
    return _merge(sols)


def _merge(sols: List[TorsionSolution]) -> List[TorsionSolution]:
    """Deterministic order; families sharing a conjugacy key are impossible by construction but checked."""
    sols = sorted(sols, key=lambda s: (s.jordan_shape, s.orders, s.conjugacy_key))
    keys = [s.conjugacy_key for s in sols]
    if len(set(keys)) != len(keys):
        raise AssertionError("two solution families share a conjugacy key")
    return sols


def _enumerate_scalar_only(f: MatPoly, g: MatPoly, locus: UniPoly) -> List[TorsionSolution]:
    sols = []
    for p in coprime_basis([locus]).base if locus.degree >= 1 else []:
        K = QuotientRing(p, check=False)
        A = Matrix.identity(f.r, K.one) * K.gen
        sols += _reps_families(f, g, "scalar", [A], lambda M: [M[i, i] for i in range(M.nrows)])
    return _merge(sols)


# -- hypotheses ------------------------------------------------------------------------------


def _check_shapes(f: MatPoly, g: MatPoly):
    if f.r != g.r:
        raise ValueError("f and g must have the same dimension")


def _det_curves_ok(f: MatPoly, g: MatPoly) -> Optional[Refusal]:
    for name, h in (("f", f), ("g", g)):
        if scalar_profile(h).det_curve.is_zero():
            return Refusal(f"{name}(xI) is singular", f"det {name}(xI) = 0")
    return None


def _spectral(f: MatPoly, g: MatPoly, K: int, jobs: int, eigen_only: bool):
    """Refusal when some checked pair is dependent or undecided; else the report."""
    rep = spectral_independence(f, g, K=K, jobs=jobs)
    for pr in rep.pairs:
        if eigen_only and (pr.i == 0 or pr.j == 0):
            continue
        a, b = pr.labels
        if pr.status == "dependent":
            return Refusal("spectral multiplicative independence fails",
                           f"{a} vs {b}: {pr.relation.describe((a, b))}"), rep
        if pr.status == "undecided":
            return Refusal("spectral multiplicative independence undecided",
                           f"{a} vs {b}: {pr.undecided.reason}"), rep
    return None, rep


def _bounds_c(f, g, found, N) -> BoundReport:
    return BoundReport(_L(f.r, f.degree, g.degree), _J(f.degree, g.degree),
                       thm_c_bound(f.r, f.degree, g.degree), found, N)


def _bounds_d(f, g, found, N, theorem_bound=None) -> BoundReport:
    tb = thm_d_bound(f.degree, g.degree) if theorem_bound is None else theorem_bound
    return BoundReport(_L(2, f.degree, g.degree), _J(f.degree, g.degree), tb, found, N)


# -- Theorem C ---------------------------------------------------------------------------------


def commutant_dimension(coeffs: Sequence[Matrix]) -> int:
    """dim of {X : C X = X C for all C in coeffs}, by a rational kernel computation."""
    r = coeffs[0].nrows
    rows = []
    for C in coeffs:
        for i in range(r):
            for j in range(r):
                # (C X - X C)[i, j] as a linear form in the entries X[a, b]
                row = [Fraction(0)] * (r * r)
                for k in range(r):
                    row[k * r + j] += C[i, k]
                    row[i * r + k] -= C[k, j]
                rows.append(row)
    if not rows:
        return r * r
    return len(Matrix(rows).kernel())


def _diagonalizing_basis(coeffs: Sequence[Matrix]) -> Optional[Matrix]:
    """V with V^-1 C V diagonal for every coefficient (r = 2, rational), if one exists."""
    nonscalar = [C for C in coeffs if not C.is_scalar()]
    if not nonscalar:
        return Matrix.identity(2)
    C = nonscalar[0]
    tr, det = C.trace(), C.det()
    disc = tr * tr - 4 * det
    from .functions import is_rational_square, rational_sqrt

    if disc == 0 or not is_rational_square(disc):
        return None
    s = rational_sqrt(disc)
    cols = []
    for ev in ((tr + s) / 2, (tr - s) / 2):
        ker = (C - Matrix.identity(2) * ev).kernel()
        cols.append(ker[0])
    V = Matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    Vi = V.inverse()
    for D in coeffs:
        X = Vi * D * V
        if X[0, 1] != 0 or X[1, 0] != 0:
            return None
    return V


def _conjugate_poly(f: MatPoly, V: Matrix) -> MatPoly:
    Vi = V.inverse()
    return MatPoly([Vi * C * V for C in f.coeffs])


def _back(sol: TorsionSolution, V: Matrix) -> TorsionSolution:
    if V.is_identity():
        return sol
    one = sol.A._one()
    Vr, Vir = V.map(lambda c: one * c), V.inverse().map(lambda c: one * c)
    return TorsionSolution(sol.jordan_shape, sol.eigenvalues, sol.eigen_moduli, sol.modulus,
                           Vr * sol.A * Vir, sol.orders, sol.count, sol.conjugacy_key)


def thm_c_enumerate(f: MatPoly, g: MatPoly, N: int = 24, K: int = 8, jobs: int = 1) -> EngineResult:
    """Commuting candidates A whose eigenvalues lie on the lemma scan locus."""
    _check_shapes(f, g)
    hyps: List[Tuple[str, str]] = []
    empty = _bounds_c(f, g, 0, N)
    bad = _det_curves_ok(f, g)
    if bad:
        return EngineResult((), empty, bad, tuple(hyps))
    curves = build_curves(f, g)
    special = special_factor_scan(curves.R)
    if special:
        return EngineResult((), empty, Refusal("R_{f,g} has a special factor", special[0].describe()), tuple(hyps))
    hyps.append(("special factors of R_{f,g}", "none"))
    if f.r == 2:
        refusal, _ = _spectral(f, g, K, jobs, eigen_only=True)
        if refusal:
            return EngineResult((), empty, refusal, tuple(hyps))
        hyps.append(("eigenvalue pairs (mu_i, eta_j)", "independent"))
    else:
        hyps.append(("eigenvalue pairs (mu_i, eta_j)", "not checked for r > 2; special-factor surrogate used"))
    scan = lemma22_scan(f, g, N, jobs=jobs)
    if scan.infinite:
        return EngineResult((), empty, Refusal("lemma scan has an infinite cell", f"(n, m) = {scan.infinite[0]}"),
                            tuple(hyps))
    W = scan.witness_poly
    coeffs = list(f.coeffs) + list(g.coeffs)
    notes = [f"commutant dimension {commutant_dimension(coeffs)}"]
    sols: List[TorsionSolution]
    if f.r == 2:
        V = _diagonalizing_basis(coeffs)
        if all(C.is_scalar() for C in coeffs):
            shapes = ("scalar", "diagonal", "jordan_block")
        elif V is not None:
            shapes = ("scalar", "diagonal")
        else:
            shapes = ("scalar",)
            notes.append("no rational common eigenbasis; scalar candidates only")
        V = V if V is not None else Matrix.identity(2)
        fV, gV = _conjugate_poly(f, V), _conjugate_poly(g, V)
        sols = [_back(s, V) for s in _enumerate_2x2(fV, gV, W, shapes, _scan_factors([scan]))]
    else:
        sols = _enumerate_scalar_only(f, g, W)
        notes.append("r > 2: scalar candidates only")
    found = sum(s.count for s in sols)
    return EngineResult(tuple(sols), _bounds_c(f, g, found, N), None, tuple(hyps), W, tuple(notes))


# -- Theorem D ---------------------------------------------------------------------------------


def candidate_locus_d(f: MatPoly, g: MatPoly, N: int, jobs: int = 1) -> Tuple[UniPoly, Dict[str, object]]:
    scans = {
        "lemma22": lemma22_scan(f, g, N, jobs=jobs),
        "lemma24": lemma24_scan(f, g, N, jobs=jobs),
        "lemma24_swapped": lemma24_scan(g, f, N, jobs=jobs),
        "det_torsion": det_torsion_scan(f, g, N),
    }
    W = UniPoly.const(1)
    for s in scans.values():
        if s.infinite:
            raise _InfiniteScan(s.kind, s.infinite[0])
        W = uni_lcm(W, s.witness_poly)
    # eigenvalues where f(lambda I) or g(lambda I) is singular are kept as candidates
    for h in (f, g):
        W = uni_lcm(W, scalar_profile(h).det_curve.squarefree_part())
    return W.monic(), scans


def _locus_factors(f: MatPoly, g: MatPoly, scans) -> List[UniPoly]:
    out = _scan_factors(scans.values())
    for h in (f, g):
        d = scalar_profile(h).det_curve.squarefree_part()
        if d.degree > 0:
            out.append(d)
    return out


class _InfiniteScan(Exception):
    def __init__(self, kind, cell):
        super().__init__(kind)
        self.kind, self.cell = kind, cell


def thm_d_enumerate(f: MatPoly, g: MatPoly, N: int = 24, K: int = 8, jobs: int = 1,
                    theorem_bound: Optional[int] = None) -> EngineResult:
    """2x2 torsion points up to conjugacy (standard-basis representatives)."""
    _check_shapes(f, g)
    if f.r != 2:
        raise ValueError("Theorem D enumeration is for 2x2 matrix polynomials")
    empty = _bounds_d(f, g, 0, N, theorem_bound)
    hyps: List[Tuple[str, str]] = []
    bad = _det_curves_ok(f, g)
    if bad:
        return EngineResult((), empty, bad, tuple(hyps))
    hyps.append(("f(xI), g(xI) nonsingular", "yes"))
    refusal, _ = _spectral(f, g, K, jobs, eigen_only=False)
    if refusal:
        return EngineResult((), empty, refusal, tuple(hyps))
    hyps.append(("spectral multiplicative independence", "independent"))
    try:
        W, scans = candidate_locus_d(f, g, N, jobs)
    except _InfiniteScan as exc:
        return EngineResult((), empty, Refusal(f"{exc.kind} scan has an infinite cell", f"(n, m) = {exc.cell}"),
                            tuple(hyps))
    sols = _enumerate_2x2(f, g, W, ("scalar", "diagonal", "jordan_block"), _locus_factors(f, g, scans))
    found = sum(s.count for s in sols)
    notes = ("standard-basis representatives only",) if not (f.has_scalar_coeffs() and g.has_scalar_coeffs()) else ()
    return EngineResult(tuple(sols), _bounds_d(f, g, found, N, theorem_bound), None, tuple(hyps), W, notes)


# -- Corollary and counterexample -----------------------------------------------------------


def cor17_check(C: Matrix, N: int = 24, K: int = 8, jobs: int = 1) -> EngineResult:
    """F(Z1, Z2) = Z1 - Z2 - C through f = Z, g = Z - C."""
    if C.shape != (2, 2):
        raise ValueError("C must be 2x2")
    C = C.map(Fraction)
    f = MatPoly.variable(2)
    g = MatPoly([-C, Matrix.identity(2)])
    empty = _bounds_d(f, g, 0, N, COR17_BOUND)
    if C.det() == 0:
        return EngineResult((), empty, Refusal("det(C) = 0", COUNTEREXAMPLE_REF))
    x = UniPoly.x()
    df, dg = scalar_profile(f).det_curve, scalar_profile(g).det_curve
    if df != x * x or dg != UniPoly([C.det(), -C.trace(), 1]):
        raise AssertionError("determinant formulas for Z and Z - C failed")
    res = thm_d_enumerate(f, g, N, K, jobs, theorem_bound=COR17_BOUND)
    hyps = (("det f(xI) = x^2", "verified"), ("det g(xI) = x^2 - tr(C) x + det(C)", "verified")) + res.hypotheses
    return EngineResult(res.solutions, res.bounds, res.refusal, hyps, res.candidate_locus, res.notes)


@dataclass(frozen=True)
class FamilyVerification:
    p: int
    difference_ok: bool
    orders: Tuple[Optional[int], Optional[int]]
    power_identity: Tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return self.difference_ok and self.orders == (self.p, self.p) and all(self.power_identity)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "difference_ok": self.difference_ok,
            "orders": list(self.orders),
            "power_identity": list(self.power_identity),
            "ok": self.ok,
        }


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def counterexample_family(p: int) -> Tuple[Matrix, Matrix, FamilyVerification]:
    """(diag(l, 1), [[l, -1], [0, 1]]) over Q[l]/Phi_p, both torsion of order p."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    K = QuotientRing(cyclotomic_poly(p))
    lam, one, zero = K.gen, K.one, K.zero
    A1 = Matrix([[lam, zero], [zero, one]])
    A2 = Matrix([[lam, -one], [zero, one]])
    C = Matrix([[zero, one], [zero, zero]])
    diff_ok = (A1 - A2) == C
    o1, o2 = torsion_report(A1).order, torsion_report(A2).order
    checks = []
    P = Matrix.identity(2, one)
    geo = zero
    for n in range(1, p + 1):
        geo = geo + lam ** (n - 1)
        P = P * A2
        checks.append(P == Matrix([[lam ** n, -geo], [zero, one]]))
    return A1, A2, FamilyVerification(p, diff_ok, (o1, o2), tuple(checks))
