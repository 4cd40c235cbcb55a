"""Multiplicative dependence of rational and quadratic algebraic functions.

The rational decider is complete: both inputs are factored over a shared
coprime base and a relation exists iff the integer exponent matrix has a
nontrivial kernel.  The quadratic decider works with logarithmic
derivatives in a common multiquadratic field; the only case it leaves open
(two irrational constants) is reported as undecided with a bounded search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple, Union

from .exact_core.cyclotomic import unity_order
from .exact_core.factor import coprime_basis, int_coprime_basis
from .exact_core.poly import UniPoly
from .functions import AlgebraicFunction2, Alg, RationalFunction, common_field
from .matpoly import MatPoly, eigen_functions_2x2, scalar_profile

__all__ = [
    "MultRelation",
    "Undecided",
    "PairResult",
    "SpectralReport",
    "RationalFunction",
    "AlgebraicFunction2",
    "mult_relation_rational",
    "mult_relation_quadratic",
    "mult_relation_constants",
    "bounded_search",
    "alg_unity_order",
    "spectral_independence",
    "spectral_sets",
]

CONSTANT_DOMAIN = "constants are not in the function-dependence domain"


@dataclass(frozen=True)
class MultRelation:
    """h1^k1 h2^k2 = constant; ``constant_order`` is its order as a root of unity."""

    k1: int
    k2: int
    constant: object
    constant_order: Optional[int]

    @property
    def is_dependence(self) -> bool:
        return self.constant_order is not None

    @property
    def exponents(self) -> Tuple[int, int]:
        """Exponents with the constant raised away (h1^a h2^b = 1)."""
        o = self.constant_order or 1
        return self.k1 * o, self.k2 * o

    def constant_str(self) -> str:
        c = self.constant
        if isinstance(c, Alg):
            return c.format_constant()
        return str(c)

    def describe(self, names=("h1", "h2")) -> str:
        return f"{names[0]}^{self.k1} * {names[1]}^{self.k2} = {self.constant_str()}"

    def as_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "constant": self.constant_str(),
            "constant_order": self.constant_order,
        }


@dataclass(frozen=True)
class Undecided:
    """No decision; ``search`` is the first relation with |k| <= K equal to 1, if any."""

    reason: str
    search: Optional[MultRelation]
    radius: int

    def as_dict(self) -> dict:
        return {
            "reason": self.reason,
            "radius": self.radius,
            "search": None if self.search is None else self.search.as_dict(),
        }


Decision = Union[MultRelation, Undecided, None]


def _normalize_sign(k1: int, k2: int) -> Tuple[int, int]:
    if k1 < 0 or (k1 == 0 and k2 < 0):
        return -k1, -k2
    return k1, k2


def _as_rf(h) -> RationalFunction:
    if isinstance(h, RationalFunction):
        return h
    if isinstance(h, AlgebraicFunction2):
        if not h.is_rational:
            raise TypeError("expected a rational function")
        return h.a
    if isinstance(h, UniPoly):
        return RationalFunction(h)
    return RationalFunction.const(h)


def _lattice_rational(h1: RationalFunction, h2: RationalFunction) -> Optional[Tuple[int, int]]:
    """Primitive generator of {k : h1^k1 h2^k2 constant}, or None if trivial."""
    polys = [p for p in (h1.num, h1.den, h2.num, h2.den) if p.degree > 0]
    rows: List[Tuple[int, int]] = [(h1.degree, h2.degree)]
    if polys:
        fac = coprime_basis(polys)
        vec = {}
        idx = 0
        for name, p in (("n1", h1.num), ("d1", h1.den), ("n2", h2.num), ("d2", h2.den)):
            if p.degree > 0:
                vec[name] = fac.exponents[idx]
                idx += 1
            else:
                vec[name] = (0,) * len(fac.base)
        for b in range(len(fac.base)):
            rows.append((vec["n1"][b] - vec["d1"][b], vec["n2"][b] - vec["d2"][b]))
    pivot = next((r for r in rows if r != (0, 0)), None)
    if pivot is None:
        raise ValueError(CONSTANT_DOMAIN)
    a, b = pivot
    k1, k2 = b, -a
    g = gcd(k1, k2)
    k1, k2 = k1 // g, k2 // g
    if any(r[0] * k1 + r[1] * k2 for r in rows):
        return None
    return _normalize_sign(k1, k2)


def mult_relation_rational(h1, h2) -> Optional[MultRelation]:
    """Complete decision for nonconstant rational functions.

    Returns the primitive relation h1^k1 h2^k2 = c (k1 > 0, or k1 = 0 < k2)
    whenever the exponent lattice is nontrivial, with c computed exactly.
    """
    h1, h2 = _as_rf(h1), _as_rf(h2)
    if h1.is_zero() or h2.is_zero():
        raise ValueError("multiplicative relations need nonzero inputs")
    if h1.is_constant() or h2.is_constant():
        raise ValueError(CONSTANT_DOMAIN)
    k = _lattice_rational(h1, h2)
    if k is None:
        return None
    w = h1 ** k[0] * h2 ** k[1]
    if not w.is_constant():
        raise AssertionError("rational relation failed re-expansion")
    c = w.constant()
    return MultRelation(k[0], k[1], c, unity_order(c))


def mult_relation_constants(c1: Fraction, c2: Fraction) -> Optional[MultRelation]:
    """Relation between two nonzero rational constants (c1^k1 c2^k2 = +-1)."""
    c1, c2 = Fraction(c1), Fraction(c2)
    if c1 == 0 or c2 == 0:
        raise ValueError("multiplicative relations need nonzero inputs")
    o1, o2 = unity_order(c1), unity_order(c2)
    if o1 is not None:
        return MultRelation(1, 0, c1, o1)
    if o2 is not None:
        return MultRelation(0, 1, c2, o2)
    vals = [abs(c1.numerator), c1.denominator, abs(c2.numerator), c2.denominator]
    base, maps = int_coprime_basis(vals)
    rows = [(maps[0].get(b, 0) - maps[1].get(b, 0), maps[2].get(b, 0) - maps[3].get(b, 0)) for b in base]
    pivot = next((r for r in rows if r != (0, 0)), None)
    if pivot is None:
        raise AssertionError("nonunit constants with empty support")
    a, b = pivot
    g = gcd(a, b)
    k1, k2 = _normalize_sign(b // g, -a // g)
    if any(r[0] * k1 + r[1] * k2 for r in rows):
        return None
    c = c1 ** k1 * c2 ** k2
    return MultRelation(k1, k2, c, unity_order(c))


# -- quadratic elements -------------------------------------------------------------

def _as_af2(h) -> AlgebraicFunction2:
    if isinstance(h, AlgebraicFunction2):
        return h
    return AlgebraicFunction2.rational(_as_rf(h))


_SMALL_ORDERS = {1: (1, 2), 2: (1, 2, 3, 4, 6), 4: (1, 2, 3, 4, 5, 6, 8, 10, 12)}


def alg_unity_order(c: Alg) -> Optional[int]:
    """Order of a constant field element of degree <= 4 (all k with phi(k) <= 4 tried)."""
    for k in _SMALL_ORDERS[c.constant_degree()]:
        if (c ** k).is_one():
            return k
    return None


def _constant_of(w: Alg):
    parts = w.constant_parts()
    if parts is None:
        return None
    if set(parts) <= {0}:
        return parts.get(0, Fraction(0))
    return w


def _relation(e1: Alg, e2: Alg, k1: int, k2: int) -> MultRelation:
    w = (e1 ** k1) * (e2 ** k2)
    c = _constant_of(w)
    if c is None:
        raise AssertionError("relation failed re-expansion")
    order = unity_order(c) if isinstance(c, Fraction) else alg_unity_order(c)
    return MultRelation(k1, k2, c, order)


def bounded_search(h1, h2, K: int = 8) -> Optional[MultRelation]:
    """First (k1, k2) != 0 with |k_i| <= K and h1^k1 h2^k2 = 1, in the order (|k1|+|k2|, k1, k2)."""
    _, (e1, e2) = common_field([_as_af2(h1), _as_af2(h2)])
    cand = [(a, b) for a in range(0, K + 1) for b in range(-K, K + 1)
            if (a, b) != (0, 0) and (a > 0 or b > 0)]
    cand.sort(key=lambda k: (abs(k[0]) + abs(k[1]), k[0], k[1]))
    inv2 = e2.inverse()
    pw1 = {0: e1.one()}
    pw2 = {0: e2.one()}
    for a in range(1, K + 1):
        pw1[a] = pw1[a - 1] * e1
        pw2[a] = pw2[a - 1] * e2
        pw2[-a] = pw2[-a + 1] * inv2
    for a, b in cand:
        if (pw1[a] * pw2[b]).is_one():
            return MultRelation(a, b, Fraction(1), 1)
    return None


def mult_relation_quadratic(h1, h2, K: int = 8) -> Decision:
    """Relation between degree <= 2 algebraic functions, absence (None), or Undecided.

    Both inputs are embedded in one multiquadratic field L over Q(x).  The
    kernel of d/dx on L is the constant field, so h1^k1 h2^k2 is constant
    exactly when k1 h1'/h1 + k2 h2'/h2 = 0, a linear condition.  Only pairs of
    irrational constants remain undecided.
    """
    q1, q2 = _as_af2(h1), _as_af2(h2)
    for q in (q1, q2):
        if q.is_rational and q.a.is_zero():
            raise ValueError("multiplicative relations need nonzero inputs")
    if q1.is_rational and q2.is_rational and q1.a.is_constant() and q2.a.is_constant():
        return mult_relation_constants(q1.a.constant(), q2.a.constant())
    _, (e1, e2) = common_field([q1, q2])
    l1 = e1.derivative() * e1.inverse()
    l2 = e2.derivative() * e2.inverse()
    if l1.is_zero() and l2.is_zero():
        for k in ((1, 0), (0, 1)):
            rel = _relation(e1, e2, *k)
            if rel.is_dependence:
                return rel
        return Undecided("both values are irrational constants", bounded_search(q1, q2, K), K)
    if l1.is_zero():
        return _relation(e1, e2, 1, 0)
    if l2.is_zero():
        return _relation(e1, e2, 0, 1)
    ratio = _constant_of(l2 * l1.inverse())
    if not isinstance(ratio, Fraction):
        return None
    # k1 + k2 * ratio = 0
    k1, k2 = _normalize_sign(-ratio.numerator, ratio.denominator)
    return _relation(e1, e2, k1, k2)


# -- spectral test -------------------------------------------------------------------

@dataclass(frozen=True)
class PairResult:
    i: int
    j: int
    labels: Tuple[str, str]
    status: str
    relation: Optional[MultRelation] = None
    undecided: Optional[Undecided] = None

    def as_dict(self) -> dict:
        return {
            "pair": list(self.labels),
            "status": self.status,
            "relation": None if self.relation is None else self.relation.as_dict(),
            "undecided": None if self.undecided is None else self.undecided.as_dict(),
        }


@dataclass(frozen=True)
class SpectralReport:
    s_f: Tuple[AlgebraicFunction2, ...]
    s_g: Tuple[AlgebraicFunction2, ...]
    verdict: str
    witnesses: Tuple[PairResult, ...]
    pairs: Tuple[PairResult, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "s_f": [str(h) for h in self.s_f],
            "s_g": [str(h) for h in self.s_g],
            "verdict": self.verdict,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "pairs": [p.as_dict() for p in self.pairs],
        }


F_LABELS = ("det f(xI)", "mu1", "mu2")
G_LABELS = ("det g(xI)", "eta1", "eta2")


def spectral_sets(f: MatPoly) -> Tuple[AlgebraicFunction2, ...]:
    prof = scalar_profile(f)
    if prof.r != 2:
        raise ValueError("spectral independence is implemented for r = 2")
    if prof.det_curve.is_zero():
        raise ValueError("f(xI) is singular; the nonsingularity hypothesis fails")
    mu1, mu2 = eigen_functions_2x2(prof)
    return (AlgebraicFunction2.rational(RationalFunction(prof.det_curve)), mu1, mu2)


def _decide_pair(h1: AlgebraicFunction2, h2: AlgebraicFunction2, K: int):
    d = mult_relation_quadratic(h1, h2, K)
    if d is None:
        return "independent", None, None
    if isinstance(d, Undecided):
        return "undecided", None, d
    if d.is_dependence:
        return "dependent", d, None
    return "independent", d, None


def _decide_task(args):
    return _decide_pair(*args)


def spectral_independence(f: MatPoly, g: MatPoly, K: int = 8, jobs: int = 1) -> SpectralReport:
    """Test every pair of S_f x S_g; witnesses in lexicographic pair order."""
    s_f, s_g = spectral_sets(f), spectral_sets(g)
    tasks = [(i, j) for i in range(3) for j in range(3)]
    if jobs > 1:
        from .parallel import pmap

        decided = pmap(_decide_task, [(s_f[i], s_g[j], K) for i, j in tasks], jobs)
    else:
        decided = [_decide_pair(s_f[i], s_g[j], K) for i, j in tasks]
    pairs = []
    for (i, j), (status, rel, und) in zip(tasks, decided):
        pairs.append(PairResult(i, j, (F_LABELS[i], G_LABELS[j]), status, rel, und))
    witnesses = tuple(p for p in pairs if p.status == "dependent")
    if witnesses:
        verdict = "dependent"
    elif any(p.status == "undecided" for p in pairs):
        verdict = "undecided"
    else:
        verdict = "independent"
    return SpectralReport(s_f, s_g, verdict, witnesses, tuple(pairs))
