"""Cyclotomic polynomials, conductor enumeration and root-of-unity orders."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Tuple

from . import dense
from .poly import UniPoly, interpolate
from .rings import QuotientRing, RingElem


def factor_int(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient needs n >= 1")
    result = n
    for p in factor_int(n):
        result -= result // p
    return result


def _int_exact_div(a: List[int], b: List[int]) -> List[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c //= b[-1]
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def _spread(a: List[int], p: int) -> List[int]:
    out = [0] * ((len(a) - 1) * p + 1)
    for i, c in enumerate(a):
        out[i * p] = c
    return out


@lru_cache(maxsize=None)
def _cyclotomic_int(n: int) -> Tuple[int, ...]:
    if n == 1:
        return (-1, 1)
    fac = factor_int(n)
    p = max(fac)
    m = n // p
    base = list(_cyclotomic_int(m))
    if m % p == 0:
        return tuple(_spread(base, p))
    return tuple(_int_exact_div(_spread(base, p), base))


def cyclotomic_poly(n: int) -> UniPoly:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    return UniPoly._raw(tuple(Fraction(c) for c in _cyclotomic_int(n)))


@lru_cache(maxsize=None)
def conductors_up_to_degree(d: int) -> Tuple[int, ...]:
    """All n with phi(n) <= d, found among n <= 2 d^2 (phi(n) >= sqrt(n/2))."""
    if d < 1:
        return ()
    return tuple(n for n in range(1, 2 * d * d + 1) if totient(n) <= d)


def cyclotomic_part(p: UniPoly, max_conductor: Optional[int] = None):
    """Multiplicities of every Phi_n in ``p`` and the monic cofactor.

    Returns ``(mults, cofactor)`` with ``monic(p) = cofactor * prod Phi_n^k``.
    """
    if p.is_zero():
        raise ValueError("cyclotomic_part of the zero polynomial")
    rest = p.monic()
    mults: Dict[int, int] = {}
    if rest.degree < 1:
        return mults, rest
    for n in conductors_up_to_degree(rest.degree):
        if max_conductor is not None and n > max_conductor:
            continue
        phi = totient(n)
        if phi > rest.degree:
            continue
        c = cyclotomic_poly(n)
        k = 0
        while rest.degree >= phi:
            q, r = divmod(rest, c)
            if not r.is_zero():
                break
            rest = q
            k += 1
        if k:
            mults[n] = k
    return mults, rest


def norm_poly(c: RingElem) -> UniPoly:
    """prod over roots a of the modulus of (y - c(a)); monic of degree deg m."""
    m = c.ring._m
    d = c.ring.degree
    xs = list(range(d + 1))
    ys = [dense.resultant(m, dense.sub([Fraction(x)], c.v)) if c.v else Fraction(x) ** d for x in xs]
    return interpolate(xs, ys)


def charpoly_norm(coeffs, ring: QuotientRing) -> UniPoly:
    """Norm to Q of a monic polynomial in y with coefficients in ``ring``.

    ``coeffs`` lists RingElem (or rational) coefficients, lowest first, monic.
    Returns prod over roots a of the modulus of chi_a(y).
    """
    m = ring._m
    deg_y = len(coeffs) - 1
    total = deg_y * ring.degree
    xs = list(range(total + 1))
    vals = []
    for x in xs:
        acc = []
        for c in reversed(coeffs):
            cv = c.v if isinstance(c, RingElem) else ([Fraction(c)] if c else [])
            acc = dense.add(dense.scale(acc, Fraction(x)), cv)
        acc = dense.rem(acc, m)
        vals.append(dense.resultant(m, acc) if acc else Fraction(0))
    return interpolate(xs, vals)


def unity_order(c) -> Optional[int]:
    """Least k >= 1 with c^k = 1, or None.

    For a RingElem the answer concerns every root of the modulus at once: it
    is the lcm of the orders at the individual roots, or None if some root
    gives a non-root of unity.
    """
    if isinstance(c, RingElem):
        if c.is_zero():
            raise ValueError("unity_order of zero")
        if c.is_rational():
            return unity_order(c.rational())
        mults, cof = cyclotomic_part(norm_poly(c))
        if cof.degree > 0:
            return None
        k = 1
        for n in mults:
            k = lcm(k, n)
        if not (c ** k).is_one():
            raise AssertionError("unity_order: norm test and power test disagree")
        return _least_order(c, k)
    c = Fraction(c)
    if c == 0:
        raise ValueError("unity_order of zero")
    if c == 1:
        return 1
    if c == -1:
        return 2
    return None


def _least_order(c: RingElem, k: int) -> int:
    for p in factor_int(k):
        while k % p == 0 and (c ** (k // p)).is_one():
            k //= p
    return k


def unity_order_branches(c: RingElem) -> List[Tuple[UniPoly, Optional[int]]]:
    """Split the modulus by the order of ``c`` at each root."""
    if c.is_rational():
        return [(c.modulus, unity_order(c.rational()) if c.v else None)]
    mults, _ = cyclotomic_part(norm_poly(c))
    out = []
    rest = c.modulus
    for n in sorted(mults):
        if rest.degree < 1:
            break
        ring = QuotientRing(rest, check=False)
        val = cyclotomic_poly(n)(ring(c))
        loc = val.zero_locus()
        if loc.degree > 0:
            out.append((loc, n))
            rest = rest.exact_div(loc).monic()
    if rest.degree > 0:
        out.append((rest, None))
    out.sort(key=lambda item: item[0].sort_key())
    return out


def order_of_root_poly(p: UniPoly) -> Optional[int]:
    """Conductor n if ``p`` equals Phi_n (up to a unit), else None."""
    if p.degree < 1:
        return None
    mults, cof = cyclotomic_part(p)
    if cof.degree == 0 and len(mults) == 1:
        (n, k), = mults.items()
        if k == 1:
            return n
    return None


__all__ = [
    "cyclotomic_poly",
    "cyclotomic_part",
    "conductors_up_to_degree",
    "totient",
    "factor_int",
    "unity_order",
    "unity_order_branches",
    "norm_poly",
    "charpoly_norm",
    "order_of_root_poly",
]
