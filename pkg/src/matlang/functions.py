"""Rational functions in x and elements of small multiquadratic extensions.

``Alg`` holds elements of Q(x)[s1, ..., sk]/(s_i^2 - D_i) for k <= 2 with the
basis monomials indexed by bit masks.  It is used for exact re-expansion of
eigenvalue relations and for bounded searches.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Dict, Sequence, Tuple

from .exact_core.cyclotomic import factor_int
from .exact_core.poly import UniPoly, format_poly, uni_gcd


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly.const(num)
        den = UniPoly.const(1) if den is None else (den if isinstance(den, UniPoly) else UniPoly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = UniPoly(), UniPoly.const(1)
            return
        if den.degree > 0:
            g = uni_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        self.num = num * (1 / lc) if lc != 1 else num
        self.den = den.monic()

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(UniPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num[0]

    @property
    def degree(self) -> int:
        """deg num - deg den (the order of the pole at infinity)."""
        return self.num.degree - self.den.degree

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _co(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction(other)
        return RationalFunction.const(other)

    def __add__(self, other):
        o = self._co(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __str__(self) -> str:
        if self.den.degree == 0:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _squarefree_split_int(n: int) -> Tuple[int, int]:
    """n = core * sq^2 with core squarefree (sign kept in core)."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    core, sq = 1, 1
    for p, e in factor_int(abs(n)).items():
        sq *= p ** (e // 2)
        if e % 2:
            core *= p
    return sign * core, sq


def is_rational_square(c: Fraction) -> bool:
    if c < 0:
        return False
    n, d = c.numerator, c.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(c: Fraction) -> Fraction:
    if not is_rational_square(c):
        raise ValueError(f"{c} is not a rational square")
    return Fraction(isqrt(c.numerator), isqrt(c.denominator))


class AlgebraicFunction2:
    """a + b*sqrt(radicand) with radicand = gamma * monic squarefree part.

    ``gamma`` is a squarefree integer.  When the radicand is a square
    the value is rational and ``b`` is zero.
    """

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a: RationalFunction, b: RationalFunction, radicand: UniPoly):
        a = a if isinstance(a, RationalFunction) else RationalFunction(a)
        b = b if isinstance(b, RationalFunction) else RationalFunction(b)
        if radicand.is_zero() or b.is_zero():
            self.a, self.b, self.radicand = a, RationalFunction.const(0), UniPoly.const(1)
            return
        # pull square factors of the radicand into b
        sq = UniPoly.const(1)
        core = UniPoly.const(1)
        for i, f in enumerate(radicand.squarefree_decomposition(), start=1):
            if i // 2:
                sq = sq * f ** (i // 2)
            if i % 2:
                core = core * f
        c = radicand.lc
        gamma, s_int = _squarefree_split_int(c.numerator * c.denominator)
        scale = RationalFunction(sq * Fraction(s_int, c.denominator))
        b = b * scale
        if core.degree == 0 and gamma == 1:
            self.a, self.b, self.radicand = a + b, RationalFunction.const(0), UniPoly.const(1)
            return
        self.a, self.b, self.radicand = a, b, core * gamma

    @classmethod
    def rational(cls, a) -> "AlgebraicFunction2":
        return cls(a if isinstance(a, RationalFunction) else RationalFunction(a), RationalFunction.const(0), UniPoly())

    @property
    def is_rational(self) -> bool:
        return self.b.is_zero()

    @property
    def gamma(self) -> int:
        return int(self.radicand.lc) if not self.is_rational else 1

    @property
    def monic_part(self) -> UniPoly:
        return self.radicand.monic() if not self.is_rational else UniPoly.const(1)

    @property
    def constant_radicand(self) -> bool:
        return not self.is_rational and self.radicand.degree == 0

    def is_constant(self) -> bool:
        if self.is_rational:
            return self.a.is_constant()
        return self.constant_radicand and self.a.is_constant() and self.b.is_constant()

    def conjugate(self) -> "AlgebraicFunction2":
        return AlgebraicFunction2(self.a, -self.b, self.radicand)

    def norm(self) -> RationalFunction:
        if self.is_rational:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * RationalFunction(self.radicand)

    def trace(self) -> RationalFunction:
        return self.a * 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicFunction2):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.radicand == other.radicand

    def __hash__(self):
        return hash((self.a, self.b, self.radicand))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        return f"{self.a} + ({self.b})*sqrt({format_poly(self.radicand)})"

    def __repr__(self) -> str:
        return f"AlgebraicFunction2({self})"


def _popcount(m: int) -> int:
    return bin(m).count("1")


class Alg:
    """Element of Q(x)[s_1..s_k]/(s_i^2 - D_i), coefficients keyed by bit mask."""

    __slots__ = ("rads", "c")

    def __init__(self, rads: Sequence[UniPoly], coeffs: Dict[int, RationalFunction]):
        self.rads = tuple(rads)
        self.c = {m: v for m, v in coeffs.items() if not v.is_zero()}

    def one(self) -> "Alg":
        return Alg(self.rads, {0: RationalFunction.const(1)})

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        return isinstance(other, Alg) and self.rads == other.rads and self.c == other.c

    def __hash__(self):
        return hash((self.rads, frozenset(self.c.items())))

    def is_one(self) -> bool:
        return list(self.c) == [0] and self.c[0] == 1

    def __repr__(self) -> str:
        if self.constant_parts() is not None:
            return f"Alg({self.format_constant()})"
        return "Alg(" + ", ".join(f"{m}: {v}" for m, v in sorted(self.c.items())) + ")"

    def _mono(self, m1: int, m2: int) -> Tuple[int, RationalFunction]:
        factor = UniPoly.const(1)
        both = m1 & m2
        for i, d in enumerate(self.rads):
            if both >> i & 1:
                factor = factor * d
        return m1 ^ m2, RationalFunction(factor)

    def __mul__(self, other: "Alg") -> "Alg":
        out: Dict[int, RationalFunction] = {}
        for m1, v1 in self.c.items():
            for m2, v2 in other.c.items():
                m, f = self._mono(m1, m2)
                term = v1 * v2 * f
                out[m] = out[m] + term if m in out else term
        return Alg(self.rads, out)

    def conj(self, flip: int) -> "Alg":
        return Alg(self.rads, {m: (-v if _popcount(m & flip) % 2 else v) for m, v in self.c.items()})

    def norm(self) -> RationalFunction:
        prod = self
        for flip in range(1, 1 << len(self.rads)):
            prod = prod * self.conj(flip)
        if set(prod.c) - {0}:
            raise AssertionError("norm left the base field")
        return prod.c.get(0, RationalFunction.const(0))

    def inverse(self) -> "Alg":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = self.one()
        for flip in range(1, 1 << len(self.rads)):
            others = others * self.conj(flip)
        n = (self * others).c.get(0)
        if n is None or n.is_zero():
            raise ZeroDivisionError("non-invertible algebra element")
        inv = n.inverse()
        return Alg(self.rads, {m: v * inv for m, v in others.c.items()})

    def __pow__(self, e: int) -> "Alg":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def constant_parts(self):
        """(mask -> rational) if every coefficient and used radicand is constant, else None."""
        out = {}
        for m, v in self.c.items():
            if not v.is_constant():
                return None
            for i, d in enumerate(self.rads):
                if m >> i & 1 and d.degree > 0:
                    return None
            out[m] = v.constant()
        return out

    def derivative(self) -> "Alg":
        """d/dx, with d(s_i)/dx = D_i'/(2 D_i) s_i."""
        logs = [RationalFunction(d.derivative(), d * 2) for d in self.rads]
        out = {}
        for m, v in self.c.items():
            dv = RationalFunction(v.num.derivative() * v.den - v.num * v.den.derivative(), v.den * v.den)
            for i in range(len(self.rads)):
                if m >> i & 1:
                    dv = dv + v * logs[i]
            out[m] = dv
        return Alg(self.rads, out)

    def format_constant(self) -> str:
        parts = self.constant_parts()
        if parts is None:
            raise ValueError("not a constant")
        terms = []
        for m in sorted(parts):
            root = "*".join(f"sqrt({self.rads[i][0]})" for i in range(len(self.rads)) if m >> i & 1)
            terms.append(str(parts[m]) if not root else f"{parts[m]}*{root}")
        return " + ".join(terms) if terms else "0"

    def constant_degree(self) -> int:
        """Degree bound 2^k of the constant field, k = number of constant generators."""
        return 1 << sum(1 for d in self.rads if d.degree == 0)


def common_field(hs: Sequence[AlgebraicFunction2]) -> Tuple[Tuple[UniPoly, ...], list]:
    """Embed quadratic functions in one field Q(x)(sqrt m_i, sqrt gamma_j).

    Generators are the distinct monic squarefree radicand parts and the
    distinct squarefree integers gamma != 1; they are independent modulo
    squares, so the algebra is a field.
    """
    monics: list = []
    gammas: list = []
    for h in hs:
        if h.is_rational:
            continue
        m, g = h.monic_part, h.gamma
        if m.degree > 0 and m not in monics:
            monics.append(m)
        if g != 1 and g not in gammas:
            gammas.append(g)
    rads = tuple(monics) + tuple(UniPoly.const(g) for g in gammas)
    out = []
    for h in hs:
        coeffs = {0: h.a}
        if not h.is_rational:
            mask = 0
            if h.monic_part.degree > 0:
                mask |= 1 << monics.index(h.monic_part)
            if h.gamma != 1:
                mask |= 1 << (len(monics) + gammas.index(h.gamma))
            coeffs[mask] = h.b
        out.append(Alg(rads, coeffs))
    return rads, out
