"""Low-level dense polynomial kernels over the rationals.

A polynomial is a list of ``Fraction`` coefficients, index = degree.  The zero
polynomial is the empty list; every function returns trimmed lists.  These
kernels carry no type checking and are shared by ``UniPoly`` and the
quotient-ring element class.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import List, Sequence, Tuple

Dense = List[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)

# Primes used for the modular coprimality shortcut in gcd().
_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)


def trim(a: Sequence[Fraction]) -> Dense:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return list(a[:n])


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    out = list(a) + [ZERO] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def neg(a: Sequence[Fraction]) -> Dense:
    return [-c for c in a]


def scale(a: Sequence[Fraction], c: Fraction) -> Dense:
    if not c:
        return []
    return [c * x for x in a]


def mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return trim(out)


def power(a: Sequence[Fraction], e: int) -> Dense:
    result: Dense = [ONE]
    base = list(a)
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def divmod_(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Dense, Dense]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = ONE / b[-1]
    q = [ZERO] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c *= inv
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return trim(q), trim(r[:db])


def rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    return divmod_(a, b)[1]


def monic(a: Sequence[Fraction]) -> Dense:
    if not a:
        return []
    inv = ONE / a[-1]
    return [c * inv for c in a]


def deriv(a: Sequence[Fraction]) -> Dense:
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence[Fraction], x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def compose(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    """a(b(x)) by Horner's rule."""
    acc: Dense = []
    for c in reversed(a):
        acc = add(mul(acc, b), [c] if c else [])
    return acc


def powmod(a: Sequence[Fraction], e: int, m: Sequence[Fraction]) -> Dense:
    result = rem([ONE], m)
    base = rem(a, m)
    while e:
        if e & 1:
            result = rem(mul(result, base), m)
        e >>= 1
        if e:
            base = rem(mul(base, base), m)
    return result


def to_primitive_int(a: Sequence[Fraction]) -> List[int]:
    """Integer polynomial proportional to ``a`` with content 1 and positive lead."""
    den = 1
    for c in a:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = igcd(g, c)
    if g == 0:
        return []
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _gcd_degree_mod(a: List[int], b: List[int], p: int) -> int:
    """Degree of gcd(a, b) over GF(p); -1 if both vanish."""

    def norm(v):
        v = [c % p for c in v]
        while v and not v[-1]:
            v.pop()
        return v

    u, v = norm(a), norm(b)
    while v:
        inv = pow(v[-1], p - 2, p)
        r = list(u)
        dv = len(v) - 1
        for k in range(len(r) - 1, dv - 1, -1):
            c = r[k] % p
            if c:
                c = c * inv % p
                for j in range(dv + 1):
                    r[k - dv + j] = (r[k - dv + j] - c * v[j]) % p
        u, v = v, norm(r[:dv])
    return len(u) - 1


def _int_prem_gcd(a: List[int], b: List[int]) -> List[int]:
    """Primitive-PRS gcd of integer polynomials (up to a unit)."""

    def content_free(v):
        g = 0
        for c in v:
            g = igcd(g, c)
        return [c // g for c in v] if g > 1 else v

    u, v = content_free(a), content_free(b)
    if len(u) < len(v):
        u, v = v, u
    while v:
        du, dv = len(u) - 1, len(v) - 1
        r = [c * v[-1] ** (du - dv + 1) for c in u]
        lv = v[-1]
        for k in range(du, dv - 1, -1):
            c = r[k]
            if c:
                q = c // lv
                for j in range(dv + 1):
                    r[k - dv + j] -= q * v[j]
        r = r[:dv]
        while r and not r[-1]:
            r.pop()
        u, v = v, content_free(r) if r else []
    return u


def gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    if len(a) == 1 or len(b) == 1:
        return [ONE]
    ia, ib = to_primitive_int(a), to_primitive_int(b)
    for p in _PRIMES:
        if ia[-1] % p and ib[-1] % p:
            if _gcd_degree_mod(ia, ib, p) == 0:
                return [ONE]
            break
    g = _int_prem_gcd(ia, ib)
    return monic([Fraction(c) for c in g])


def xgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[Dense, Dense, Dense]:
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = ONE / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def resultant(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Resultant of polynomials taken at their actual degrees."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return ZERO
    acc = ONE
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return acc * b[0] ** m
        if m == 0:
            return acc * a[0] ** n
        r = rem(a, b)
        if not r:
            return ZERO
        k = len(r) - 1
        if (m * n) & 1:
            acc = -acc
        acc *= b[-1] ** (m - k)
        a, b = b, r


def formal_resultant(a: Sequence[Fraction], b: Sequence[Fraction], da: int, db: int) -> Fraction:
    """Sylvester resultant with formal degrees ``da``, ``db`` (leading zeros allowed)."""
    a, b = trim(a), trim(b)
    ea, eb = len(a) - 1, len(b) - 1
    if ea > da or eb > db:
        raise ValueError("formal degree below actual degree")
    if not a or not b:
        return ZERO
    if ea < da and eb < db:
        return ZERO
    if ea < da:
        # Res_{da,db}(a, b) = (-1)^{db(da-ea)} lc(b)^{da-ea} Res(a, b)
        sign = -1 if (db * (da - ea)) & 1 else 1
        return sign * b[-1] ** (da - ea) * resultant(a, b)
    if eb < db:
        return a[-1] ** (db - eb) * resultant(a, b)
    return resultant(a, b)


def squarefree_part(a: Sequence[Fraction]) -> Dense:
    a = trim(a)
    if len(a) <= 1:
        return [ONE] if a else []
    g = gcd(a, deriv(a))
    return monic(divmod_(a, g)[0])


def yun(a: Sequence[Fraction]) -> List[Dense]:
    """Monic squarefree decomposition [a1, a2, ...] with monic(a) = prod a_i^i."""
    a = monic(trim(a))
    if len(a) <= 1:
        return []
    out: List[Dense] = []
    b = gcd(a, deriv(a))
    c = divmod_(a, b)[0]
    d = sub(divmod_(deriv(a), b)[0], deriv(c))
    while len(c) > 1:
        g = gcd(c, d)
        out.append(g)
        c = divmod_(c, g)[0]
        d = sub(divmod_(d, g)[0], deriv(c))
    while out and out[-1] == [ONE]:
        out.pop()
    return out


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Dense:
    """Newton interpolation through (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: Dense = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [-xs[i], ONE]), [coef[i]] if coef[i] else [])
    return out
