"""Small dense matrices over exact commutative rings.

Entries may be ``Fraction``, ``RingElem``, ``UniPoly`` or ``BiPoly``; any
type with ``+ - *`` and comparison to 0 works for the ring operations.
Inverse, kernel and rank additionally need division (fields, or quotient
rings where a zero divisor raises ``SplitRequired``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    z = getattr(x, "is_zero", None)
    return z() if z is not None else x == 0


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix rows")

    # -- constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "Matrix":
        zero = one * 0
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: Optional[int] = None, zero=Fraction(0)) -> "Matrix":
        return cls([[zero] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, entries, zero=None) -> "Matrix":
        entries = list(entries)
        z = entries[0] * 0 if zero is None else zero
        n = len(entries)
        return cls([[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rationals(cls, rows) -> "Matrix":
        return cls([[Fraction(c) for c in r] for r in rows])

    # -- basic protocol -------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            _is_zero(a - b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Matrix(" + repr([[str(c) for c in r] for r in self.rows]) + ")"

    def map(self, fn: Callable) -> "Matrix":
        return Matrix([[fn(c) for c in r] for r in self.rows])

    def entries(self):
        for r in self.rows:
            yield from r

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.entries())

    def is_identity(self) -> bool:
        return all(
            _is_zero(c - 1) if i == j else _is_zero(c)
            for i, r in enumerate(self.rows)
            for j, c in enumerate(r)
        )

    def is_scalar(self) -> bool:
        if not self.is_square():
            return False
        d = self.rows[0][0] if self.nrows else 0
        return all(
            _is_zero(c - d) if i == j else _is_zero(c)
            for i, r in enumerate(self.rows)
            for j, c in enumerate(r)
        )

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch in matrix addition")
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("dimension mismatch in matrix subtraction")
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch in matrix product")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = r[0] * c[0]
                    for k in range(1, len(r)):
                        acc = acc + r[k] * c[k]
                    row.append(acc)
                out.append(row)
            return Matrix(out)
        return Matrix([[a * other for a in r] for r in self.rows])

    def __rmul__(self, other):
        return Matrix([[other * a for a in r] for r in self.rows])

    def __pow__(self, e: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        one = self._one()
        result = Matrix.identity(self.nrows, one)
        base = self
        first = True
        while e:
            if e & 1:
                result = base if first else result * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return result

    def _one(self):
        c = self.rows[0][0]
        return c * 0 + 1

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.rows)))

    T = property(transpose)

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def vec_mul(self, v: Sequence) -> List:
        return [sum((a * b for a, b in zip(r[1:], v[1:])), r[0] * v[0]) for r in self.rows]

    # -- determinants ----------------------------------------------------------
    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        if n <= 4:
            return _laplace(self.rows)
        return _bareiss(self.rows)

    def adjugate(self) -> "Matrix":
        n = self.nrows
        if n == 1:
            return Matrix([[self._one()]])
        if n == 2:
            (a, b), (c, d) = self.rows
            return Matrix([[d, -b], [-c, a]])
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [r[:i] + r[i + 1:] for k, r in enumerate(self.rows) if k != j]
                m = Matrix(minor).det()
                row.append(m if (i + j) % 2 == 0 else -m)
            out.append(row)
        return Matrix(out)

    def inverse(self) -> "Matrix":
        d = self.det()
        if _is_zero(d):
            raise ZeroDivisionError("singular matrix")
        if self.nrows <= 3:
            inv = 1 / d if isinstance(d, (int, Fraction)) else d.inverse()
            return self.adjugate() * inv
        return _gauss_inverse(self)

    # -- linear algebra over a field ---------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns (field entries)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            piv = None
            for i in range(rank, self.nrows):
                if not _is_zero(rows[i][col]):
                    piv = i
                    break
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            p = rows[rank][col]
            inv = 1 / p if isinstance(p, (int, Fraction)) else p.inverse()
            rows[rank] = [c * inv for c in rows[rank]]
            for i in range(self.nrows):
                if i != rank and not _is_zero(rows[i][col]):
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
        return Matrix(rows) if rows else self, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> List[List]:
        """Basis of the right kernel (field entries)."""
        red, pivots = self.rref()
        zero = self.rows[0][0] * 0
        one = zero + 1
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fcol in free:
            v = [zero] * self.ncols
            v[fcol] = one
            for r, pcol in enumerate(pivots):
                v[pcol] = -red.rows[r][fcol]
            basis.append(v)
        return basis


def _laplace(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        c = rows[0][j]
        if _is_zero(c):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = c * _laplace(minor)
        if acc is None:
            acc = term if j % 2 == 0 else -term
        else:
            acc = acc + term if j % 2 == 0 else acc - term
    return acc if acc is not None else rows[0][0] * 0


def _bareiss(rows):
    """Fraction-free elimination; entries need ``exact_div`` or true division."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = a[0][0] * 0 + 1
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def _exact_div(num, den):
    if hasattr(num, "exact_div"):
        return num.exact_div(den)
    if isinstance(den, (int, Fraction)):
        return num / den
    return num * den.inverse()


def _gauss_inverse(m: Matrix) -> Matrix:
    n = m.nrows
    one = m._one()
    zero = one * 0
    aug = Matrix([list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.rows)])
    red, pivots = aug.rref()
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return Matrix([r[n:] for r in red.rows])
