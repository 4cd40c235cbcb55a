"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from . import dense


def to_fraction(value) -> Fraction:
    """Exact conversion; floats are rejected to keep every decision exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        if re.match(r"^\s*[+-]?\d*\.\d*(e[+-]?\d+)?\s*$", text, re.I):
            raise ValueError("decimal literals not accepted; use a/b")
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class UniPoly:
    """Immutable dense polynomial with ``Fraction`` coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: Tuple[Fraction, ...] = tuple(dense.trim([to_fraction(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "UniPoly":
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        p._hash = None
        return p

    @classmethod
    def x(cls) -> "UniPoly":
        return cls._raw((dense.ZERO, dense.ONE))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls.const(1)
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    # -- basic properties ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else dense.ZERO

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else dense.ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    def sort_key(self):
        return (self.degree, self.coeffs)

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        return UniPoly._raw(dense.add(self.coeffs, self._coerce(other).coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        return UniPoly._raw(dense.sub(self.coeffs, self._coerce(other).coeffs))

    def __rsub__(self, other):
        return UniPoly._raw(dense.sub(self._coerce(other).coeffs, self.coeffs))

    def __neg__(self):
        return UniPoly._raw(dense.neg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly._raw(dense.scale(self.coeffs, Fraction(other)))
        return UniPoly._raw(dense.mul(self.coeffs, self._coerce(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        return UniPoly._raw(dense.power(self.coeffs, e))

    def __divmod__(self, other):
        q, r = dense.divmod_(self.coeffs, self._coerce(other).coeffs)
        return UniPoly._raw(q), UniPoly._raw(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "UniPoly":
        return UniPoly._raw(dense.monic(self.coeffs))

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(dense.deriv(self.coeffs))

    def __call__(self, x):
        if isinstance(x, UniPoly):
            return UniPoly._raw(dense.compose(self.coeffs, x.coeffs))
        if isinstance(x, (int, Fraction)):
            return dense.evaluate(self.coeffs, Fraction(x))
        # generic ring element (RingElem, matrices are handled elsewhere)
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        return self(other)

    def shift(self, a) -> "UniPoly":
        """p(x + a)."""
        return self(UniPoly([a, 1]))

    def squarefree_part(self) -> "UniPoly":
        return UniPoly._raw(dense.squarefree_part(self.coeffs))

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return uni_gcd(self, self.derivative()).degree == 0

    def squarefree_decomposition(self):
        return [UniPoly._raw(c) for c in dense.yun(self.coeffs)]

    def content_primitive(self):
        """(rational content, primitive integer polynomial) with positive lead."""
        ints = dense.to_primitive_int(self.coeffs)
        prim = UniPoly(ints)
        return (self.lc / prim.lc if ints else dense.ZERO), prim

    def __repr__(self) -> str:
        return f"UniPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd of two rational polynomials, not both zero."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return UniPoly._raw(dense.gcd(p.coeffs, q.coeffs))


def uni_lcm(p: UniPoly, q: UniPoly) -> UniPoly:
    if p.is_zero() or q.is_zero():
        return UniPoly()
    return (p * q).exact_div(uni_gcd(p, q)).monic()


def uni_xgcd(p: UniPoly, q: UniPoly):
    g, s, t = dense.xgcd(p.coeffs, q.coeffs)
    return UniPoly._raw(g), UniPoly._raw(s), UniPoly._raw(t)


def uni_resultant(p: UniPoly, q: UniPoly) -> Fraction:
    return dense.resultant(p.coeffs, q.coeffs)


def interpolate(xs, ys) -> UniPoly:
    return UniPoly._raw(dense.interpolate([Fraction(x) for x in xs], [Fraction(y) for y in ys]))


# -- text form ---------------------------------------------------------------

def format_terms(terms, var_names) -> str:
    """Format [(exponent-tuple, coefficient)] sorted by descending degree."""
    if not terms:
        return "0"
    parts = []
    for exps, c in terms:
        mono = []
        for v, e in zip(var_names, exps):
            if e == 1:
                mono.append(v)
            elif e > 1:
                mono.append(f"{v}^{e}")
        mono_s = "*".join(mono)
        mag = abs(c)
        if mono_s:
            body = mono_s if mag == 1 else f"{format_rational(mag)}*{mono_s}"
        else:
            body = format_rational(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_poly(p: UniPoly, var: str = "x") -> str:
    terms = [((k,), c) for k, c in reversed(list(enumerate(p.coeffs))) if c]
    return format_terms(terms, (var,))


_TOKEN = re.compile(r"\s*(?:(\d+(?:\s*/\s*\d+)?)|([A-Za-z_]\w*)|(\^)|([-+*()])|(\S))")


def parse_terms(text: str, var_names):
    """Parse a polynomial expression in the given variables.

    Accepts sums of products of rationals, variables, powers and parentheses,
    e.g. ``"x^2 - x + 1"`` or ``"(y1 - 1/2*x)^2"``.  Returns a dict
    exponent-tuple -> Fraction.
    """
    nv = len(var_names)
    index = {v: i for i, v in enumerate(var_names)}
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(5):
            if m.group(5) == ".":
                raise ValueError("decimal literals not accepted; use a/b")
            raise ValueError(f"unexpected character {m.group(5)!r} at position {m.start(5)}")
        if m.group(1):
            tokens.append(("num", parse_rational(m.group(1).replace(" ", "")), m.start(1)))
        elif m.group(2):
            if m.group(2) not in index:
                raise ValueError(f"unknown variable {m.group(2)!r} at position {m.start(2)}")
            tokens.append(("var", index[m.group(2)], m.start(2)))
        else:
            tokens.append(("op", m.group(3) or m.group(4), m.start()))
    if re.search(r"\d\.\d|\.\d|\d\.", text):
        raise ValueError("decimal literals not accepted; use a/b")

    def p_add(a, b, sign=1):
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + sign * c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def p_mul(a, b):
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    one = {(0,) * nv: Fraction(1)}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def expect_op(op):
        nonlocal i
        t = peek()
        if not t or t[0] != "op" or t[1] != op:
            where = t[2] if t else len(text)
            raise ValueError(f"expected {op!r} at position {where}")
        i += 1

    def expr():
        nonlocal i
        sign = 1
        t = peek()
        if t and t[0] == "op" and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            i += 1
        acc = p_add({}, term(), sign)
        while True:
            t = peek()
            if t and t[0] == "op" and t[1] in "+-":
                i += 1
                acc = p_add(acc, term(), -1 if t[1] == "-" else 1)
            else:
                return acc

    def term():
        nonlocal i
        acc = factor()
        while True:
            t = peek()
            if t and t[0] == "op" and t[1] == "*":
                i += 1
                acc = p_mul(acc, factor())
            elif t and (t[0] in ("num", "var") or (t[0] == "op" and t[1] == "(")):
                acc = p_mul(acc, factor())
            else:
                return acc

    def factor():
        nonlocal i
        base = atom()
        t = peek()
        if t and t[0] == "op" and t[1] == "^":
            i += 1
            t2 = peek()
            if not t2 or t2[0] != "num" or t2[1].denominator != 1 or t2[1] < 0:
                raise ValueError(f"exponent must be a nonnegative integer at position {t[2]}")
            i += 1
            out = one
            for _ in range(int(t2[1])):
                out = p_mul(out, base)
            return out
        return base

    def atom():
        nonlocal i
        t = peek()
        if t is None:
            raise ValueError("unexpected end of polynomial")
        if t[0] == "num":
            i += 1
            return {(0,) * nv: t[1]} if t[1] else {}
        if t[0] == "var":
            i += 1
            e = [0] * nv
            e[t[1]] = 1
            return {tuple(e): Fraction(1)}
        if t[0] == "op" and t[1] == "(":
            i += 1
            v = expr()
            expect_op(")")
            return v
        if t[0] == "op" and t[1] == "-":
            i += 1
            return p_add({}, atom(), -1)
        raise ValueError(f"unexpected {t[1]!r} at position {t[2]}")

    if not tokens:
        raise ValueError("empty polynomial")
    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input at position {tokens[i][2]}")
    return result


def parse_poly(text: str, var: str = "x") -> UniPoly:
    terms = parse_terms(text, (var,))
    deg = max((k[0] for k in terms), default=-1)
    coeffs = [Fraction(0)] * (deg + 1)
    for (k,), c in terms.items():
        coeffs[k] = c
    return UniPoly(coeffs)
