"""Sparse bivariate polynomials and resultants by evaluation-interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from . import dense
from .poly import UniPoly, format_terms, interpolate, parse_terms, to_fraction

Key = Tuple[int, int]


class BiPoly:
    """``terms`` maps (i, j) to the coefficient of v0^i v1^j; zeros never stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Key, object] = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = to_fraction(c)
            if c:
                clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "BiPoly":
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def var(cls, k: int) -> "BiPoly":
        return cls._raw({(1, 0) if k == 0 else (0, 1): Fraction(1)})

    @classmethod
    def from_uni(cls, p: UniPoly, var: int) -> "BiPoly":
        if var == 0:
            return cls._raw({(i, 0): c for i, c in enumerate(p.coeffs) if c})
        return cls._raw({(0, j): c for j, c in enumerate(p.coeffs) if c})

    @classmethod
    def from_coeffs_in(cls, var: int, coeffs: Sequence[UniPoly]) -> "BiPoly":
        """Build sum_k coeffs[k] * v_var^k, each coefficient in the other variable."""
        out: Dict[Key, Fraction] = {}
        for k, c in enumerate(coeffs):
            for i, a in enumerate(c.coeffs):
                if a:
                    out[(k, i) if var == 0 else (i, k)] = a
        return cls._raw(out)

    # -- properties -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(k[var] for k in self.terms)

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BiPoly.const(other)
        raise TypeError(f"cannot combine BiPoly with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for k, c in o.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return BiPoly._raw({})
            return BiPoly._raw({k: c * other for k, c in self.terms.items()})
        o = self._coerce(other)
        out: Dict[Key, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- views and evaluation ---------------------------------------------------
    def coeffs_in(self, var: int) -> List[UniPoly]:
        """Coefficients of v_var^k as polynomials in the other variable."""
        d = self.degree(var)
        buckets: List[Dict[int, Fraction]] = [dict() for _ in range(d + 1)]
        for (i, j), c in self.terms.items():
            if var == 0:
                buckets[i][j] = c
            else:
                buckets[j][i] = c
        out = []
        for b in buckets:
            m = max(b) if b else -1
            out.append(UniPoly._raw(tuple(b.get(e, Fraction(0)) for e in range(m + 1))))
        return out

    def eval_var(self, var: int, value) -> UniPoly:
        """Substitute v_var = value; result is a polynomial in the other variable."""
        value = to_fraction(value)
        other = 1 - var
        d = self.degree(other)
        coeffs = [Fraction(0)] * (d + 1)
        pw: Dict[int, Fraction] = {}
        for k, c in self.terms.items():
            e = k[var]
            if e not in pw:
                pw[e] = value ** e
            coeffs[k[other]] += c * pw[e]
        return UniPoly(coeffs)

    def __call__(self, u, v):
        acc = 0
        for (i, j), c in self.terms.items():
            acc = acc + c * u ** i * v ** j
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def substitute_uni(self, var: int, p: UniPoly) -> "BiPoly":
        """Replace v_var by p(v_other)."""
        other = 1 - var
        acc = BiPoly._raw({})
        pb = BiPoly.from_uni(p, other)
        for c in reversed(self.coeffs_in(var)):
            acc = acc * pb + BiPoly.from_uni(c, other)
        return acc

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero BiPoly")
        r = self
        dv = other.degree(0)
        oc = other.coeffs_in(0)
        lead = oc[-1]
        q = BiPoly._raw({})
        while not r.is_zero() and r.degree(0) >= dv:
            rc = r.coeffs_in(0)
            k = len(rc) - 1 - dv
            qc, rem = divmod(rc[-1], lead)
            if not rem.is_zero():
                raise ArithmeticError("inexact BiPoly division")
            t = BiPoly.from_coeffs_in(0, [UniPoly()] * k + [qc])
            q = q + t
            r = r - t * other
        if not r.is_zero():
            raise ArithmeticError("inexact BiPoly division")
        return q

    def format(self, names=("x", "y")) -> str:
        terms = sorted(self.terms.items(), key=lambda kc: (-(kc[0][0] + kc[0][1]), -kc[0][0]))
        return format_terms(terms, names)

    def __repr__(self) -> str:
        return f"BiPoly({self.format()!r})"


def parse_bipoly(text: str, names=("y1", "y2")) -> BiPoly:
    return BiPoly(parse_terms(text, names))


# -- resultants ---------------------------------------------------------------

def _check_elim(p: BiPoly, q: BiPoly, var: int):
    if p.is_zero() or q.is_zero():
        raise ValueError("zero polynomial has no resultant")
    a, b = p.degree(var), q.degree(var)
    if a < 1 or b < 1:
        raise ValueError("resultant needs positive degree in the eliminated variable")
    return a, b


def _specialize(p: BiPoly, var: int, u) -> List[Fraction]:
    """p with the non-eliminated variable set to u, as dense coefficients in v_var."""
    return list(p.eval_var(1 - var, u).coeffs)


def resultant_elim(p: BiPoly, q: BiPoly, eliminate: int = 0, separate: bool = True):
    """Res with respect to variable ``eliminate`` (Sylvester, formal degrees).

    With ``separate`` the remaining variable of ``p`` and of ``q`` are distinct
    (p in (x, y1), q in (x, y2)) and a BiPoly in (y1, y2) is returned.
    Otherwise both share the remaining variable and a UniPoly is returned.
    Computed by exact evaluation at 0, 1, 2, ... and interpolation.
    """
    var = eliminate
    a, b = _check_elim(p, q, var)
    other = 1 - var
    dp, dq = max(p.degree(other), 0), max(q.degree(other), 0)
    if not separate:
        bound = a * dq + b * dp
        xs = list(range(bound + 1))
        ys = [dense.formal_resultant(_specialize(p, var, u), _specialize(q, var, u), a, b) for u in xs]
        return interpolate(xs, ys)
    d1, d2 = b * dp, a * dq
    qs = [_specialize(q, var, w) for w in range(d2 + 1)]
    ws = list(range(d2 + 1))
    rows: List[UniPoly] = []
    for u in range(d1 + 1):
        pu = _specialize(p, var, u)
        vals = [dense.formal_resultant(pu, qw, a, b) for qw in qs]
        rows.append(interpolate(ws, vals))
    # interpolate each y2-coefficient across the y1 sample points
    us = list(range(d1 + 1))
    out: Dict[Key, Fraction] = {}
    for j in range(d2 + 1):
        col = interpolate(us, [r[j] for r in rows])
        for i, c in enumerate(col.coeffs):
            if c:
                out[(i, j)] = c
    return BiPoly._raw(out)


def sylvester_matrix(p_coeffs: Sequence, q_coeffs: Sequence, a: int, b: int):
    """Sylvester matrix (as nested lists) for formal degrees a, b; coefficients lowest first."""
    zero = p_coeffs[0] * 0 if p_coeffs else 0
    pc = list(p_coeffs) + [zero] * (a + 1 - len(p_coeffs))
    qc = list(q_coeffs) + [zero] * (b + 1 - len(q_coeffs))
    n = a + b
    rows = []
    for i in range(b):
        row = [zero] * n
        for k in range(a + 1):
            row[i + k] = pc[a - k]
        rows.append(row)
    for i in range(a):
        row = [zero] * n
        for k in range(b + 1):
            row[i + k] = qc[b - k]
        rows.append(row)
    return rows


def sylvester_resultant(p: BiPoly, q: BiPoly, eliminate: int = 0, separate: bool = True) -> BiPoly:
    """Fraction-free (Bareiss) determinant of the Sylvester matrix, for cross-checks."""
    from .matrix import _bareiss, _laplace

    var = eliminate
    a, b = _check_elim(p, q, var)
    pc = [BiPoly.from_uni(c, 0) for c in p.coeffs_in(var)]
    qc = [BiPoly.from_uni(c, 1 if separate else 0) for c in q.coeffs_in(var)]
    rows = sylvester_matrix(pc, qc, a, b)
    return _laplace(rows) if a + b <= 3 else _bareiss(rows)


def bipoly_from_terms(items: Iterable[Tuple[Key, object]]) -> BiPoly:
    return BiPoly(dict(items))
