"""Arithmetic in Q[t]/(m(t)) for squarefree, not necessarily irreducible, m.

Inverting a zero divisor raises ``SplitRequired`` carrying a proper factor of
the modulus; ``branches`` reruns a computation on both factors.  Predicates
are decided by zero loci: the roots of ``m`` at which a value vanishes are the
roots of ``gcd(value, m)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from . import dense
from .poly import UniPoly, format_poly, uni_gcd


class SplitRequired(Exception):
    """A zero divisor was met; ``factor`` is a proper monic factor of ``modulus``."""

    def __init__(self, modulus: UniPoly, factor: UniPoly):
        super().__init__(f"zero divisor: modulus {modulus} splits off {factor}")
        self.modulus = modulus
        self.factor = factor


class QuotientRing:
    __slots__ = ("modulus", "_m", "_hash")

    def __init__(self, modulus: UniPoly, check: bool = True):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        modulus = modulus.monic()
        if check and not modulus.is_squarefree():
            raise ValueError(f"modulus {modulus} is not squarefree")
        self.modulus = modulus
        self._m = list(modulus.coeffs)
        self._hash = hash(("QuotientRing", modulus.coeffs))

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"QuotientRing({format_poly(self.modulus, 't')})"

    def __call__(self, value) -> "RingElem":
        if isinstance(value, RingElem):
            if value.ring == self:
                return value
            return RingElem(self, dense.rem(value.v, self._m))
        if isinstance(value, UniPoly):
            return RingElem(self, dense.rem(value.coeffs, self._m))
        if isinstance(value, (int, Fraction)):
            return RingElem(self, dense.rem([Fraction(value)], self._m))
        if isinstance(value, (list, tuple)):
            return RingElem(self, dense.rem(dense.trim([Fraction(c) for c in value]), self._m))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    @property
    def gen(self) -> "RingElem":
        return self(UniPoly.x())

    @property
    def one(self) -> "RingElem":
        return self(1)

    @property
    def zero(self) -> "RingElem":
        return RingElem(self, [])

    def split(self, factor: UniPoly):
        """The two quotient rings for ``factor`` and its cofactor."""
        factor = factor.monic()
        return QuotientRing(factor, check=False), QuotientRing(self.modulus.exact_div(factor), check=False)


class RingElem:
    """Element of a quotient ring; ``v`` is the reduced dense value."""

    __slots__ = ("ring", "v")

    def __init__(self, ring: QuotientRing, v: Sequence[Fraction]):
        self.ring = ring
        self.v = v if isinstance(v, list) else list(v)

    # -- views --------------------------------------------------------------
    @property
    def modulus(self) -> UniPoly:
        return self.ring.modulus

    @property
    def value(self) -> UniPoly:
        return UniPoly._raw(tuple(self.v))

    def is_zero(self) -> bool:
        return not self.v

    def is_one(self) -> bool:
        return len(self.v) == 1 and self.v[0] == 1

    def is_rational(self) -> bool:
        return len(self.v) <= 1

    def rational(self) -> Fraction:
        if len(self.v) > 1:
            raise ValueError("ring element is not a rational constant")
        return self.v[0] if self.v else dense.ZERO

    def zero_locus(self) -> UniPoly:
        """Monic factor of the modulus whose roots are where this value vanishes."""
        if not self.v:
            return self.ring.modulus
        return UniPoly._raw(tuple(dense.gcd(self.v, self.ring._m)))

    def __repr__(self) -> str:
        return f"RingElem({format_poly(self.value, 't')} mod {format_poly(self.modulus, 't')})"

    def __str__(self) -> str:
        return format_poly(self.value, "t")

    # -- arithmetic ---------------------------------------------------------
    def _other(self, other) -> List[Fraction]:
        if isinstance(other, RingElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("ring elements over different moduli")
            return other.v
        if isinstance(other, (int, Fraction)):
            return [Fraction(other)] if other else []
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self.v == ([Fraction(other)] if other else [])
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self.v)))

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, dense.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, dense.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElem(self.ring, dense.sub(o, self.v))

    def __neg__(self):
        return RingElem(self.ring, dense.neg(self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if len(o) <= 1:
            return RingElem(self.ring, dense.scale(self.v, o[0]) if o else [])
        return RingElem(self.ring, dense.rem(dense.mul(self.v, o), self.ring._m))

    __rmul__ = __mul__

    def inverse(self) -> "RingElem":
        if not self.v:
            raise ZeroDivisionError("inverse of zero in quotient ring")
        if len(self.v) == 1:
            return RingElem(self.ring, [1 / self.v[0]])
        g, s, _ = dense.xgcd(self.v, self.ring._m)
        if len(g) > 1:
            raise SplitRequired(self.ring.modulus, UniPoly._raw(tuple(g)))
        return RingElem(self.ring, dense.rem(s, self.ring._m))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RingElem(self.ring, dense.scale(self.v, 1 / Fraction(other)))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RingElem(self.ring, dense.powmod(self.v, e, self.ring._m))

    def lift(self, ring: QuotientRing) -> "RingElem":
        """Reduce into a ring whose modulus divides this one."""
        return ring(self)


def is_zero(x) -> bool:
    if isinstance(x, RingElem):
        return x.is_zero()
    return x == 0


def zero_locus(x, modulus: UniPoly) -> UniPoly:
    """Roots of ``modulus`` where ``x`` (RingElem or rational) vanishes."""
    if isinstance(x, RingElem):
        return x.zero_locus()
    return modulus if x == 0 else UniPoly.const(1)


def locus_meet(*polys: UniPoly) -> UniPoly:
    g = polys[0]
    for p in polys[1:]:
        g = uni_gcd(g, p)
    return g


def branches(modulus: UniPoly, compute: Callable[[QuotientRing], object]) -> List[Tuple[UniPoly, object]]:
    """Run ``compute`` over Q[t]/(modulus), splitting on zero divisors.

    Returns ``[(factor, result), ...]`` whose factors multiply to the
    (monic) modulus, sorted by degree then coefficients.
    """
    out = []
    stack = [modulus.monic()]
    while stack:
        m = stack.pop()
        ring = QuotientRing(m, check=False)
        try:
            out.append((m, compute(ring)))
        except SplitRequired as exc:
            if exc.modulus != m:
                raise
            g = exc.factor.monic()
            stack.append(m.exact_div(g).monic())
            stack.append(g)
    out.sort(key=lambda item: item[0].sort_key())
    return out


def crt(parts: Sequence[Tuple[UniPoly, UniPoly]]) -> Tuple[UniPoly, UniPoly]:
    """Combine residues ``v_i mod m_i`` over pairwise coprime moduli."""
    m, v = parts[0][0].monic(), parts[0][1] % parts[0][0]
    for mi, vi in parts[1:]:
        g, s, _ = dense.xgcd(m.coeffs, mi.coeffs)
        if len(g) != 1:
            raise ValueError("crt moduli are not coprime")
        delta = dense.rem(dense.mul(dense.sub(vi.coeffs, v.coeffs), s), mi.coeffs)
        v = UniPoly._raw(tuple(dense.add(v.coeffs, dense.mul(m.coeffs, delta))))
        m = m * mi
        v = v % m
    return m.monic(), v


def ring_split(e: RingElem) -> Tuple[RingElem, RingElem]:
    """Split along the zero locus of ``e``: (e mod gcd, e mod cofactor)."""
    g = e.zero_locus()
    if g.degree <= 0 or g.degree == e.modulus.degree:
        raise ValueError("element is invertible or zero, no split")
    r1, r2 = e.ring.split(g)
    return r1(e), r2(e)


# -- polynomials over a quotient ring ------------------------------------------
# Dense lists of RingElem, index = degree, trailing zeros trimmed.

def rp_trim(a: Sequence[RingElem]) -> List[RingElem]:
    n = len(a)
    while n and a[n - 1].is_zero():
        n -= 1
    return list(a[:n])


def rp_from(ring: QuotientRing, coeffs) -> List[RingElem]:
    return rp_trim([ring(c) for c in coeffs])


def rp_divmod(a: Sequence[RingElem], b: Sequence[RingElem]):
    b = rp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], rp_trim(r)
    inv = b[-1].inverse()
    q = [None] * (len(r) - db)
    zero = b[-1] * 0
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv
        q[k - db] = c
        if c.is_zero():
            continue
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - c * b[j]
    q = [c if c is not None else zero for c in q]
    return rp_trim(q), rp_trim(r[:db])


def rp_monic(a: Sequence[RingElem]) -> List[RingElem]:
    a = rp_trim(a)
    if not a:
        return []
    inv = a[-1].inverse()
    return [c * inv for c in a]


def rp_gcd(a: Sequence[RingElem], b: Sequence[RingElem]) -> List[RingElem]:
    """Monic gcd; may raise SplitRequired when a leading coefficient is a zero divisor."""
    a, b = rp_trim(a), rp_trim(b)
    while b:
        _, r = rp_divmod(a, b)
        a, b = b, r
    return rp_monic(a)


def rp_eval(a: Sequence[RingElem], x):
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * x + c
    return acc
