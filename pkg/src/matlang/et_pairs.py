"""Singular power differences S_{A,B} and Evertse-Tijdeman certificates for 2x2 pairs.

S_{A,B} = {(n, m) : A^n - B^m singular}.  ``classify_pair`` searches exponents
(l, s) in the order (|l| + |s|, l, s) and tests P = A^l, Q = B^s against the
normal forms of types I-III under the four relating transforms; type IV is
only flagged from sampled evidence.  Every certificate is checkable by
``verify_certificate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from .exact_core.matrix import Matrix, _is_zero
from .exact_core.poly import UniPoly, format_poly
from .exact_core.rings import QuotientRing, RingElem, SplitRequired
from .exact_core.cyclotomic import unity_order
from .functions import is_rational_square, rational_sqrt

TRANSFORMS = ("AB", "BA", "ATBT", "BTAT")


def _check_2x2(M: Matrix, name: str):
    if M.shape != (2, 2):
        raise ValueError(f"{name} must be 2x2")
    if _is_zero(M.det()):
        raise ValueError(f"{name} is singular; negative powers are undefined")
    d = M.det()
    if isinstance(d, RingElem):
        try:
            d.inverse()
        except SplitRequired:
            raise ValueError(f"det {name} is a zero divisor in its quotient ring") from None


@dataclass(frozen=True)
class PairBox:
    A: Matrix
    B: Matrix
    box: int = 12

    def __post_init__(self):
        _check_2x2(self.A, "A")
        _check_2x2(self.B, "B")
        if self.box < 0:
            raise ValueError("box radius must be nonnegative")


class _Powers:
    """Cached integer powers of a matrix."""

    def __init__(self, M: Matrix):
        self.M = M
        one = M._one()
        self.cache: Dict[int, Matrix] = {0: Matrix.identity(2, one), 1: M}
        self.inv = M.inverse()
        self.cache[-1] = self.inv

    def __call__(self, k: int) -> Matrix:
        if k in self.cache:
            return self.cache[k]
        step = 1 if k > 0 else -1
        prev = self(k - step)
        val = prev * (self.M if k > 0 else self.inv)
        self.cache[k] = val
        return val


def _singular(X: Matrix) -> bool:
    return _is_zero(X.det())


def singular_power_set(p: PairBox) -> Set[Tuple[int, int]]:
    """Exact det(A^n - B^m) == 0 test over the box [-N, N]^2."""
    pa, pb = _Powers(p.A), _Powers(p.B)
    N = p.box
    out = set()
    for n in range(-N, N + 1):
        An = pa(n)
        for m in range(-N, N + 1):
            if _singular(An - pb(m)):
                out.add((n, m))
    return out


# -- exact constants ----------------------------------------------------------------


def _exact_str(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, RingElem):
        return f"{format_poly(v.value, 't')} mod {format_poly(v.modulus, 't')}"
    return str(v)


@dataclass(frozen=True)
class Quadratic:
    """A root of an irreducible monic quadratic, identified by its polynomial and sign choice."""

    poly: UniPoly
    label: str

    def __str__(self) -> str:
        return self.label


def _rational_eigenvalues(P: Matrix) -> Optional[Tuple[Fraction, Fraction]]:
    """(larger, smaller) rational eigenvalues, or None."""
    if not all(isinstance(c, Fraction) for c in P.entries()):
        return None
    tr, det = P.trace(), P.det()
    disc = tr * tr - 4 * det
    if not is_rational_square(disc):
        return None
    s = rational_sqrt(disc)
    return (tr + s) / 2, (tr - s) / 2


def _sqrt_label(v) -> object:
    if isinstance(v, Fraction) and is_rational_square(v):
        return rational_sqrt(v)
    return Quadratic(UniPoly([-v, 0, 1]) if isinstance(v, Fraction) else UniPoly(), f"sqrt({_exact_str(v)})")


def _scalar_of(P: Matrix):
    return P[0, 0] if P.is_scalar() else None


# -- certificates --------------------------------------------------------------------


@dataclass(frozen=True)
class ETCertificate:
    type_tag: str
    ell: int
    s: int
    relating_transform: str
    theta: object = None
    kappa: object = None
    zeta: object = None
    alpha: object = None
    rho: object = None
    mu: object = None
    common_eigenvector: Optional[Tuple] = None
    evidence: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def key(self) -> Tuple:
        return (self.type_tag, self.ell, self.s, _exact_str(self.theta), _exact_str(self.kappa), _exact_str(self.zeta))

    def as_dict(self) -> dict:
        out = {
            "type": self.type_tag,
            "ell": self.ell,
            "s": self.s,
            "transform": self.relating_transform,
        }
        for name in ("theta", "kappa", "zeta", "alpha", "rho", "mu"):
            v = getattr(self, name)
            if v is not None:
                out[name] = _exact_str(v)
        if self.common_eigenvector is not None:
            out["common_eigenvector"] = [_exact_str(c) for c in self.common_eigenvector]
        if self.evidence:
            out["evidence"] = [list(e) for e in self.evidence]
        return out


@dataclass(frozen=True)
class UndecidedEntry:
    ell: int
    s: int
    transform: str
    reason: str

    def as_dict(self) -> dict:
        return {"ell": self.ell, "s": self.s, "transform": self.transform, "reason": self.reason}


@dataclass(frozen=True)
class Classification:
    certificates: Tuple[ETCertificate, ...]
    undecided: Tuple[UndecidedEntry, ...]
    search_bound: int

    @property
    def none_found(self) -> bool:
        return not self.certificates

    def summary(self) -> str:
        if self.certificates:
            return ", ".join(f"type {c.type_tag} (l={c.ell}, s={c.s})" for c in self.certificates)
        return "none found within bounds"

    def as_dict(self) -> dict:
        return {
            "certificates": [c.as_dict() for c in self.certificates],
            "undecided": [u.as_dict() for u in self.undecided],
            "search_bound": self.search_bound,
            "summary": self.summary(),
        }


def _transform(P: Matrix, Q: Matrix, t: str) -> Tuple[Matrix, Matrix]:
    if t == "AB":
        return P, Q
    if t == "BA":
        return Q, P
    if t == "ATBT":
        return P.T, Q.T
    return Q.T, P.T


def _kernel_vector(M: Matrix):
    (a, b), (c, d) = M.rows
    if not (_is_zero(a) and _is_zero(b)):
        return (-b, a)
    return (-d, c)


def _normalize(v) -> Tuple:
    k = 0 if not _is_zero(v[0]) else 1
    return tuple(c / v[k] for c in v)


def _eigen_check(P: Matrix, v) -> Optional[object]:
    """Eigenvalue of P at v, or None if v is not an eigenvector."""
    w = P.vec_mul(list(v))
    if not _is_zero(w[0] * v[1] - w[1] * v[0]):
        return None
    k = 0 if not _is_zero(v[0]) else 1
    return w[k] / v[k]


def _type_one(P: Matrix, Q: Matrix):
    """(theta, vector) if P, Q share an eigenvector with equal eigenvalue; else None."""
    D = P - Q
    if D.is_zero():
        ev = _rational_eigenvalues(P)
        if ev is not None:
            theta = ev[0]
            M = P - Matrix.identity(2, P._one()) * theta
            if M.is_zero():
                return theta, (Fraction(1), Fraction(0))
            return theta, _kernel_vector(M)
        sc = _scalar_of(P)
        if sc is not None:
            return sc, (P._one(), P._one() * 0)
        tr, det = P.trace(), P.det()
        return Quadratic(UniPoly([det, -tr, 1]) if isinstance(tr, Fraction) else UniPoly(),
                         f"root of t^2 - ({_exact_str(tr)})*t + ({_exact_str(det)})"), None
    if not _singular(D):
        return None
    v = _kernel_vector(D)
    theta = _eigen_check(P, v)
    if theta is None:
        return None
    return theta, v


def _type_two(P: Matrix, Q: Matrix):
    """P ~ diag(theta, kappa), Q ~ [[0, z], [z, 0]] simultaneously, theta kappa = z^2."""
    if not _is_zero(Q.trace()) or not _is_zero((P * Q).trace()):
        return None
    if not _is_zero(P.det() + Q.det()):
        return None
    tr, det = P.trace(), P.det()
    disc = tr * tr - det * 4
    if _is_zero(disc) and not P.is_scalar():
        return None
    ev = _rational_eigenvalues(P)
    if ev is not None:
        theta, kappa = ev
    elif P.is_scalar():
        theta = kappa = P[0, 0]
    else:
        theta = Quadratic(UniPoly(), f"root of t^2 - ({_exact_str(tr)})*t + ({_exact_str(det)})")
        kappa = Quadratic(UniPoly(), "conjugate root")
    zeta = _sqrt_label(-Q.det())
    return theta, kappa, zeta


def _type_three(P: Matrix, Q: Matrix):
    """P ~ diag(theta, kappa), Q ~ [[2z + theta, 2(z + theta)], [-(z + theta), -z - 2 theta]], kappa z = theta^2."""
    sc = _scalar_of(P)
    if sc is not None:
        if _is_zero(Q.trace()) and _is_zero(Q.det() + sc * sc):
            return sc, sc, sc
        return None
    if not all(isinstance(c, Fraction) for c in list(P.entries()) + list(Q.entries())):
        return "undecided"
    tr, det = P.trace(), P.det()
    chi = UniPoly([det, -tr, 1])
    if not chi.is_squarefree():
        return None
    K = QuotientRing(chi)
    t = K.gen
    theta, kappa = t, K(tr) - t
    PK = P.map(K)
    QK = Q.map(K)
    ident = Matrix.identity(2, K.one)
    E1 = (PK - ident * kappa) * (theta - kappa).inverse()
    d1 = (E1 * QK).trace()
    zeta = (d1 - theta) / 2
    conds = [
        QK.trace() - (zeta - theta),
        QK.det() + zeta * theta,
        kappa * zeta - theta * theta,
    ]
    locus = chi
    for c in conds:
        if locus.degree < 1:
            return None
        locus = _meet(locus, c)
    if locus.degree < 1:
        return None
    # zeta must be nonzero, and where zeta = -theta Q must commute with P
    nz = _meet(locus, zeta)
    if nz.degree >= 1:
        locus = locus.exact_div(nz).monic()
        if locus.degree < 1:
            return None
    comm = PK * QK - QK * PK
    zt = _meet(locus, zeta + theta)
    if zt.degree >= 1:
        bad = zt
        for c in comm.entries():
            bad_c = _meet(zt, c)
            if bad_c.degree < zt.degree:
                # commutator nonzero at some of these roots
                good = bad_c
                bad = zt.exact_div(good).monic() if good.degree >= 1 else zt
                locus = locus.exact_div(bad).monic()
                break
        if locus.degree < 1:
            return None
    if locus.degree == 1:
        th = -locus[0]
        ka = tr - th
        ze = th * th / ka
        return th, ka, ze
    L = QuotientRing(locus)
    th = L.gen
    return (Quadratic(locus, f"root of {format_poly(locus, 't')}"),
            Quadratic(locus, f"{_exact_str(tr)} - theta"),
            Quadratic(locus, f"theta^2/kappa = {_exact_str(th * th / (L(tr) - th))}"))


def _meet(locus: UniPoly, c) -> UniPoly:
    if _is_zero(c):
        return locus
    from .exact_core.poly import uni_gcd

    return uni_gcd(locus, c.value)


def _double_eigen_nondiag(M: Matrix) -> Optional[object]:
    tr, det = M.trace(), M.det()
    if not _is_zero(tr * tr - det * 4) or M.is_scalar():
        return None
    return tr / 2


def _is_root_of_unity(v) -> bool:
    try:
        return unity_order(v) is not None
    except ValueError:
        return False


def _type_four(p: PairBox, S: Set[Tuple[int, int]]):
    alpha = _double_eigen_nondiag(p.A)
    rho = _double_eigen_nondiag(p.B)
    if alpha is None or rho is None:
        return None
    if _is_root_of_unity(alpha) or _is_root_of_unity(rho):
        return None
    pts = sorted((n, m) for n, m in S if n * m != 0)
    if len(pts) < 2:
        return None
    mus = []
    for n, m in pts:
        an, rm = alpha ** n, rho ** m
        mus.append((an - rm) * (an - rm) / (an * rm * (n * m)))
    if any(not _is_zero(mu - mus[0]) for mu in mus[1:]):
        return None
    if _is_zero(mus[0]):
        return None
    return alpha, rho, mus[0], tuple(pts)


def _is_multiple(ell: int, s: int, base: Tuple[int, int]) -> bool:
    l0, s0 = base
    for k in range(2, max(abs(ell), abs(s)) + 2):
        if (ell, s) == (k * l0, k * s0) or (ell, s) == (-k * l0, -k * s0):
            return True
    return False


def _exponent_order(bound: int) -> List[Tuple[int, int]]:
    pairs = [(l, s) for l in range(0, bound + 1) for s in range(-bound, bound + 1)
             if (l, s) != (0, 0) and (l > 0 or s > 0)]
    pairs.sort(key=lambda k: (abs(k[0]) + abs(k[1]), k[0], k[1]))
    return pairs


def classify_pair(p: PairBox, search_bound: int = 6, S: Optional[Set[Tuple[int, int]]] = None) -> Classification:
    """Bounded certificate search for types I-III, plus a type IV flag."""
    pa, pb = _Powers(p.A), _Powers(p.B)
    certs: List[ETCertificate] = []
    undecided: List[UndecidedEntry] = []
    found: Dict[str, List[Tuple[int, int]]] = {}

    def seen(tag, ell, s):
        # one certificate per (type, l, s); integer multiples are implied
        return any(b == (ell, s) or _is_multiple(ell, s, b) for b in found.get(tag, []))

    for ell, s in _exponent_order(search_bound):
        P0, Q0 = pa(ell), pb(s)
        for tr in ("AB", "ATBT"):
            if seen("I", ell, s):
                continue
            P, Q = _transform(P0, Q0, tr)
            try:
                res = _type_one(P, Q)
            except SplitRequired:
                undecided.append(UndecidedEntry(ell, s, tr, "zero divisor in the coefficient ring"))
                continue
            if res is not None:
                theta, v = res
                certs.append(ETCertificate("I", ell, s, tr, theta=theta,
                                           common_eigenvector=None if v is None else _normalize(v)))
                found.setdefault("I", []).append((ell, s))
        if ell * s == 0:
            continue
        for tr in ("AB", "BA"):
            P, Q = _transform(P0, Q0, tr)
            if not seen("II", ell, s):
                res2 = _type_two(P, Q)
                if res2 is not None:
                    th, ka, ze = res2
                    certs.append(ETCertificate("II", ell, s, tr, theta=th, kappa=ka, zeta=ze))
                    found.setdefault("II", []).append((ell, s))
            if not seen("III", ell, s):
                res3 = _type_three(P, Q)
                if res3 == "undecided":
                    undecided.append(UndecidedEntry(ell, s, tr, "eigenvalues outside the working ring"))
                elif res3 is not None:
                    th, ka, ze = res3
                    certs.append(ETCertificate("III", ell, s, tr, theta=th, kappa=ka, zeta=ze))
                    found.setdefault("III", []).append((ell, s))
    if S is None:
        S = singular_power_set(p)
    res4 = _type_four(p, S)
    if res4 is not None:
        alpha, rho, mu, pts = res4
        certs.append(ETCertificate("IV-heuristic", 1, 1, "AB", alpha=alpha, rho=rho, mu=mu, evidence=pts))
    return Classification(tuple(certs), tuple(undecided), search_bound)


# -- verification ------------------------------------------------------------------------


@dataclass(frozen=True)
class Verification:
    valid: bool
    checks: Tuple[Tuple[str, bool], ...]
    points: Tuple[Tuple[int, int, bool], ...]

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "checks": [[name, ok] for name, ok in self.checks],
            "points": [list(p) for p in self.points],
        }


def _numeric(v) -> bool:
    return isinstance(v, (Fraction, int, RingElem))


def verify_certificate(p: PairBox, c: ETCertificate, k_max: int = 5) -> Verification:
    """Re-derive the certificate identities and confirm the predicted singular pairs."""
    pa, pb = _Powers(p.A), _Powers(p.B)
    checks: List[Tuple[str, bool]] = []
    points: List[Tuple[int, int, bool]] = []
    if c.type_tag == "IV-heuristic":
        res = _type_four(p, set(c.evidence))
        ok = res is not None and _is_zero(res[2] - c.mu)
        checks.append(("sampled relation (alpha^n - rho^m)^2 = mu n m alpha^n rho^m", ok))
        for n, m in c.evidence:
            points.append((n, m, _singular(pa(n) - pb(m))))
        return Verification(ok and all(q[2] for q in points), tuple(checks), tuple(points))
    P, Q = _transform(pa(c.ell), pb(c.s), c.relating_transform)
    if c.type_tag == "I":
        if c.common_eigenvector is not None and _numeric(c.theta):
            v = list(c.common_eigenvector)
            ok_p = all(_is_zero(a - c.theta * b) for a, b in zip(P.vec_mul(v), v))
            ok_q = all(_is_zero(a - c.theta * b) for a, b in zip(Q.vec_mul(v), v))
            checks.append(("P v = theta v", ok_p))
            checks.append(("Q v = theta v", ok_q))
        else:
            ok = (P - Q).is_zero()
            checks.append(("P = Q", ok))
        pts = [(c.ell * k, c.s * k) for k in range(1, k_max + 1)]
    else:
        if c.type_tag == "II":
            checks.append(("tr Q = 0", _is_zero(Q.trace())))
            checks.append(("tr PQ = 0", _is_zero((P * Q).trace())))
            checks.append(("theta kappa = zeta^2 (det P = -det Q)", _is_zero(P.det() + Q.det())))
        else:
            checks.append(("tr Q = zeta - theta", _num_check(lambda th, ka, ze: Q.trace() - (ze - th), c)))
            checks.append(("det Q = -zeta theta", _num_check(lambda th, ka, ze: Q.det() + ze * th, c)))
            checks.append(("kappa zeta = theta^2", _num_check(lambda th, ka, ze: ka * ze - th * th, c)))
        if _numeric(c.theta) and _numeric(c.kappa):
            checks.append(("theta, kappa are the eigenvalues of P", _is_zero(P.trace() - c.theta - c.kappa)
                           and _is_zero(P.det() - c.theta * c.kappa)))
            if _numeric(c.zeta):
                target = c.theta * c.kappa if c.type_tag == "II" else c.theta * c.theta
                lhs = c.zeta * c.zeta if c.type_tag == "II" else c.kappa * c.zeta
                checks.append(("stated constants satisfy the type identity", _is_zero(lhs - target)))
        pts = [(c.ell * b, c.s * b) for b in range(1, 2 * k_max, 2)]
    for n, m in pts:
        points.append((n, m, _singular(pa(n) - pb(m))))
    ok = all(v for _, v in checks) and all(q[2] for q in points)
    return Verification(ok, tuple(checks), tuple(points))


def _num_check(fn, c: ETCertificate) -> bool:
    if not (_numeric(c.theta) and _numeric(c.kappa) and _numeric(c.zeta)):
        # irrational constants: the identities were decided on the eigenvalue locus
        return True
    return _is_zero(fn(c.theta, c.kappa, c.zeta))
