"""Resultant curves of a matrix-polynomial pair, binomial factors and torsion scans.

For f, g with r x r coefficients the curves are

    R(y1, y2)   = Res_x(P_f(x, y1), P_g(x, y2))
    T_fg(y1, y2) = Res_x(P_f(x, y1), y2 - det g(xI))

where P_f(x, y) = det(yI - f(xI)).  The lambda scans stratify roots of unity
by conductor, using Phi_n in place of y^n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from .exact_core.bipoly import BiPoly, resultant_elim
from .exact_core.cyclotomic import cyclotomic_part, cyclotomic_poly, totient
from .exact_core.poly import UniPoly, format_poly, uni_gcd
from .exact_core.rings import QuotientRing, RingElem, rp_divmod, rp_from, rp_gcd
from .matpoly import MatPoly, scalar_profile
from .parallel import pmap

# -- curves -------------------------------------------------------------------


def _res_x(p: BiPoly, q: BiPoly) -> BiPoly:
    """Res_x for p in (x, y1), q in (x, y2), allowing x-degree 0 on one side."""
    a, b = p.degree(0), q.degree(0)
    if a >= 1 and b >= 1:
        return resultant_elim(p, q, eliminate=0, separate=True)
    if a < 1 and b < 1:
        raise ValueError("resultant needs positive x-degree in at least one input")
    if b < 1:
        # q = q(y2): Res = q^a
        qy = BiPoly.from_uni(q.eval_var(0, 0), 1)
        return qy ** a
    py = BiPoly.from_uni(p.eval_var(0, 0), 0)
    return py ** b


@dataclass(frozen=True)
class DegreeCheck:
    """Total degrees of the curves against r(deg f + deg g).

    ``exact_bounds`` holds the Sylvester bounds deg_y1 <= deg_x P_g * r and
    deg_y2 <= deg_x P_f * r, which always hold.
    """

    budget: int
    totals: Tuple[int, int, int]
    within_budget: bool
    y1_degrees: Tuple[int, int, int]
    y2_degrees: Tuple[int, int, int]
    exact_bounds: Tuple[int, int]
    within_exact: bool

    def as_dict(self) -> dict:
        return {
            "budget": self.budget,
            "totals": {"R": self.totals[0], "T_fg": self.totals[1], "T_gf": self.totals[2]},
            "within_budget": self.within_budget,
            "exact_bounds": list(self.exact_bounds),
            "within_exact": self.within_exact,
        }


@dataclass(frozen=True)
class CurvePair:
    R: BiPoly
    T_fg: BiPoly
    T_gf: BiPoly
    degree_budget: int
    degree_check: DegreeCheck

    def as_dict(self) -> dict:
        names = ("y1", "y2")
        return {
            "R": self.R.format(names),
            "T_fg": self.T_fg.format(names),
            "T_gf": self.T_gf.format(names),
            "degree_budget": self.degree_budget,
            "degree_check": self.degree_check.as_dict(),
        }


def _det_line(det: UniPoly) -> BiPoly:
    """y - det(x) as a BiPoly in (x, y)."""
    return BiPoly.var(1) - BiPoly.from_uni(det, 0)


def build_curves(f: MatPoly, g: MatPoly) -> CurvePair:
    if f.r != g.r:
        raise ValueError("f and g must have the same dimension")
    pf, pg = scalar_profile(f), scalar_profile(g)
    Pf, Pg = pf.char_surface, pg.char_surface
    if Pf.degree(0) < 1 and Pg.degree(0) < 1:
        raise ValueError("characteristic surfaces have no x-dependence")
    R = _res_x(Pf, Pg)
    T_fg = _res_x(Pf, _det_line(pg.det_curve))
    # y1 carries g's eigenvalue and y2 det f(xI)
    T_gf = _res_x(Pg, _det_line(pf.det_curve))
    for name, c in (("R", R), ("T_fg", T_fg), ("T_gf", T_gf)):
        if c.is_zero():
            raise ArithmeticError(f"{name} vanished identically; input is corrupt")
    r = f.r
    budget = r * (f.degree + g.degree)
    curves = (R, T_fg, T_gf)
    totals = tuple(c.total_degree for c in curves)
    dys1 = tuple(c.degree(0) for c in curves)
    dys2 = tuple(c.degree(1) for c in curves)
    exact = (r * max(Pg.degree(0), 0), r * max(Pf.degree(0), 0))
    within_exact = R.degree(0) <= exact[0] and R.degree(1) <= exact[1]
    check = DegreeCheck(budget, totals, all(t <= budget for t in totals), dys1, dys2, exact, within_exact)
    return CurvePair(R, T_fg, T_gf, budget, check)


# -- binomial factors ------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialFactor:
    """A factor y1^i - rho y2^j (ratio) or y1^i y2^j - rho (monomial), rho of order rho_conductor."""

    form: str
    i: int
    j: int
    rho_conductor: int
    omega_conductor: int
    certificate: Dict[str, str] = field(default_factory=dict, compare=False)

    def describe(self) -> str:
        def mono(var, e):
            return "" if e == 0 else (var if e == 1 else f"{var}^{e}")

        if self.form == "ratio":
            left = mono("y1", self.i) or "1"
            right = mono("y2", self.j)
            binom = f"{left} - rho*{right}" if right else f"{left} - rho"
        else:
            lhs = "*".join(m for m in (mono("y1", self.i), mono("y2", self.j)) if m)
            binom = f"{lhs} - rho"
        return f"{binom} with rho of order {self.rho_conductor}"

    def as_dict(self) -> dict:
        return {
            "form": self.form,
            "i": self.i,
            "j": self.j,
            "rho_conductor": self.rho_conductor,
            "omega_conductor": self.omega_conductor,
            "binomial": self.describe(),
            "certificate": dict(self.certificate),
        }


def _group_gcd(F: BiPoly, weight) -> Optional[UniPoly]:
    """gcd in s of the t-coefficient groups of F(s t^wa, t^wb)."""
    groups: Dict[int, Dict[int, object]] = {}
    for (a, b), c in F.terms.items():
        groups.setdefault(weight(a, b), {})[a] = c
    g = None
    for texp in sorted(groups):
        grp = groups[texp]
        p = UniPoly([grp.get(k, 0) for k in range(max(grp) + 1)])
        g = p.monic() if g is None else uni_gcd(g, p)
        if g.degree == 0:
            return g
    return g


def _reduces_to_zero(F: BiPoly, form: str, i: int, j: int, n: int) -> bool:
    """Normal form of F modulo the binomial over Q[s]/Phi_n, with omega = s and rho = s^i."""
    K = QuotientRing(cyclotomic_poly(n), check=False)
    rho = K.gen ** i
    acc: Dict[Tuple[int, int], RingElem] = {}
    for (a, b), c in F.terms.items():
        if form == "ratio":
            q = a // i if i else 0
            key = (a - q * i, b + q * j)
        else:
            q = min(a // i if i else a + b + 1, b // j if j else a + b + 1)
            key = (a - q * i, b - q * j)
        term = rho ** q * c
        acc[key] = acc[key] + term if key in acc else term
    return all(v.is_zero() for v in acc.values())


def _content(F: BiPoly, var: int) -> UniPoly:
    """gcd of the coefficients of F viewed as a polynomial in the other variable."""
    polys = F.coeffs_in(1 - var)
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p.monic() if g is None else uni_gcd(g, p)
        if g.degree == 0:
            break
    return g if g is not None else UniPoly.const(1)


def special_factor_scan(F: BiPoly) -> List[SpecialFactor]:
    """All binomial factors with root-of-unity coefficient, by exact substitution."""
    if F.is_zero():
        raise ValueError("special_factor_scan needs a nonzero polynomial")
    out: List[SpecialFactor] = []
    # univariate pieces: y1 - rho and 1 - rho y2
    for var, (i, j) in ((0, (1, 0)), (1, (0, 1))):
        c = _content(F, var)
        if c.degree > 0:
            mults, _ = cyclotomic_part(c)
            for n in sorted(mults):
                out.append(SpecialFactor("ratio", i, j, n, n, {
                    "content": format_poly(c, "y1" if var == 0 else "y2"),
                    "cyclotomic_factor": f"Phi_{n}",
                }))
    d1, d2 = F.degree(0), F.degree(1)
    for i in range(1, d1 + 1):
        for j in range(1, d2 + 1):
            if gcd(i, j) != 1:
                continue
            for form in ("ratio", "monomial"):
                if form == "ratio":
                    G = _group_gcd(F, lambda a, b: j * a + i * b)
                else:
                    G = _group_gcd(F, lambda a, b: j * a - i * b)
                if G is None or G.degree < 1:
                    continue
                mults, _ = cyclotomic_part(G)
                seen = set()
                for n in sorted(mults):
                    rho_n = n // gcd(n, i)
                    if rho_n in seen:
                        continue
                    if not _reduces_to_zero(F, form, i, j, n):
                        raise AssertionError("binomial factor failed exact division check")
                    seen.add(rho_n)
                    sub = f"(y1, y2) = (s*t^{j}, t^{i})" if form == "ratio" else f"(y1, y2) = (s*t^{j}, t^-{i})"
                    out.append(SpecialFactor(form, i, j, rho_n, n, {
                        "substitution": sub,
                        "gcd_in_s": format_poly(G, "s"),
                        "cyclotomic_factor": f"Phi_{n}",
                    }))
    return out


# -- torsion points ---------------------------------------------------------------------


INFINITE_REFUSAL = "curve has special factor; torsion points are infinite"


@dataclass(frozen=True)
class TorsionPoints:
    """Points with zeta1 of order n1 and zeta2 of order n2: roots of Phi_n2(u) and h_u(t)."""

    n1: int
    n2: int
    gcd_factor: str
    count: int

    def as_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "gcd_factor": self.gcd_factor, "count": self.count}


@dataclass(frozen=True)
class TorsionPointSet:
    points: Tuple[TorsionPoints, ...]
    count: int
    scan_bound: int
    degree: int
    bound: int
    within_bound: bool

    def as_dict(self) -> dict:
        return {
            "points": [p.as_dict() for p in self.points],
            "count": self.count,
            "scan_bound": self.scan_bound,
            "bound": self.bound,
            "within_bound": self.within_bound,
        }


def _t_poly_over(F: BiPoly, K: QuotientRing) -> list:
    """F(t, u) as a polynomial in t with coefficients in K = Q[u]/m."""
    return rp_from(K, F.coeffs_in(0))


def _conductor_row(args):
    F, n1, N = args
    phi1 = cyclotomic_poly(n1)
    A = resultant_elim(BiPoly.from_uni(phi1, 0), F, eliminate=0, separate=False)
    if A.is_zero():
        raise AssertionError("Res_t(Phi_n1, F) vanished: missed special factor")
    found = []
    for n2 in range(1, N + 1):
        phi2 = cyclotomic_poly(n2)
        if phi2.degree > A.degree or not phi2.divides(A):
            continue
        K = QuotientRing(phi2, check=False)
        Ft = _t_poly_over(F, K)
        h = rp_gcd(rp_from(K, phi1.coeffs), Ft)
        if len(h) < 2:
            continue
        _, rem = rp_divmod(Ft, h)
        if rem:
            raise AssertionError("reported torsion points do not lie on the curve")
        desc = " + ".join(f"({c})*t^{k}" for k, c in enumerate(h) if not c.is_zero())
        found.append(TorsionPoints(n1, n2, desc, totient(n2) * (len(h) - 1)))
    return found


def torsion_points_on_curve(F: BiPoly, N: int, jobs: int = 1) -> TorsionPointSet:
    """All torsion points with both conductors <= N on a curve without binomial factors."""
    if special_factor_scan(F):
        raise ValueError(INFINITE_REFUSAL)
    deg = F.total_degree
    bound = 11 * deg * deg
    pts: List[TorsionPoints] = []
    if F.degree(0) >= 1 and F.degree(1) >= 1:
        rows = pmap(_conductor_row, [(F, n1, N) for n1 in range(1, N + 1)], jobs)
        for row in rows:
            pts.extend(row)
    # a curve in one variable only has no torsion points once the scan is clean
    count = sum(p.count for p in pts)
    return TorsionPointSet(tuple(pts), count, N, deg, bound, count <= bound)


# -- lambda scans ----------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaCertificate:
    n: int
    m: int
    gcd: UniPoly

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "gcd": format_poly(self.gcd)}


@dataclass(frozen=True)
class LambdaSet:
    """Candidate eigenvalue locus; ``infinite`` lists (n, m) cells where every lambda qualifies."""

    kind: str
    witness_poly: UniPoly
    certificates: Tuple[LambdaCertificate, ...]
    scan_bound: int
    count: int
    bound: int
    infinite: Tuple[Tuple[int, int], ...] = ()

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "witness_poly": format_poly(self.witness_poly),
            "certificates": [c.as_dict() for c in self.certificates],
            "scan_bound": self.scan_bound,
            "count": self.count,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "infinite": [list(c) for c in self.infinite],
        }


def eigen_resultant(P: BiPoly, n: int) -> UniPoly:
    """U_n(x) = Res_y(P(x, y), Phi_n(y)): zero at lambda iff P(lambda, y) has a root of order n."""
    phi = BiPoly.from_uni(cyclotomic_poly(n), 1)
    if P.degree(1) < 1:
        raise ValueError("characteristic surface must have positive y-degree")
    return resultant_elim(P, phi, eliminate=1, separate=False)


def _grid(kind: str, left: List[UniPoly], right: List[UniPoly], N: int, bound: int) -> LambdaSet:
    certs: List[LambdaCertificate] = []
    infinite: List[Tuple[int, int]] = []
    acc = UniPoly.const(1)
    for n in range(1, N + 1):
        a = left[n - 1]
        for m in range(1, N + 1):
            b = right[m - 1]
            if a.is_zero() and b.is_zero():
                infinite.append((n, m))
                continue
            g = uni_gcd(a, b)
            if g.degree < 1:
                continue
            g = g.squarefree_part()
            certs.append(LambdaCertificate(n, m, g))
            acc = acc * g.exact_div(uni_gcd(acc, g))
    acc = acc.monic()
    return LambdaSet(kind, acc, tuple(certs), N, acc.degree, bound, tuple(infinite))


def _lemma_constant(r: int, df: int, dg: int, power: int) -> int:
    return 22 * r ** power * (df + dg) * df * dg


def _eigen_resultants(P: BiPoly, N: int, jobs: int) -> List[UniPoly]:
    return pmap(_eigen_task, [(P, n) for n in range(1, N + 1)], jobs)


def _eigen_task(args):
    return eigen_resultant(*args)


def _det_cyclo(det: UniPoly, N: int) -> List[UniPoly]:
    return [cyclotomic_poly(m)(det) for m in range(1, N + 1)]


def lemma22_scan(f: MatPoly, g: MatPoly, N: int, jobs: int = 1) -> LambdaSet:
    """lambda where f(lambda I) and g(lambda I) both have a root-of-unity eigenvalue."""
    pf, pg = scalar_profile(f), scalar_profile(g)
    U = _eigen_resultants(pf.char_surface, N, jobs)
    V = _eigen_resultants(pg.char_surface, N, jobs)
    return _grid("lemma22", U, V, N, _lemma_constant(f.r, f.degree, g.degree, 5))


def lemma24_scan(f: MatPoly, g: MatPoly, N: int, jobs: int = 1) -> LambdaSet:
    """lambda where f(lambda I) has a root-of-unity eigenvalue and det g(lambda I) is one."""
    pf, pg = scalar_profile(f), scalar_profile(g)
    U = _eigen_resultants(pf.char_surface, N, jobs)
    W = _det_cyclo(pg.det_curve, N)
    return _grid("lemma24", U, W, N, _lemma_constant(f.r, f.degree, g.degree, 4))


def det_torsion_scan(f: MatPoly, g: MatPoly, N: int) -> LambdaSet:
    """lambda where det f(lambda I) and det g(lambda I) are both roots of unity."""
    pf, pg = scalar_profile(f), scalar_profile(g)
    # no theorem constant here; the root count of prod Phi_n(det f) is a hard cap
    bound = sum(totient(n) for n in range(1, N + 1)) * max(pf.det_curve.degree, 0)
    return _grid("det_torsion", _det_cyclo(pf.det_curve, N), _det_cyclo(pg.det_curve, N), N, bound)
