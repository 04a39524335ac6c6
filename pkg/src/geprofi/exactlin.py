"""Dense exact linear algebra over Q or F_p.

Rational work uses ``Fraction`` Gauss-Jordan elimination, or Bareiss
fraction-free elimination on integer-scaled rows where only a rank or a
determinant is needed.  Over F_p the rows are lowered to integers and handed
to the mod-p kernel.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import _accel
from .errors import ShapeError
from .field import QQ, Field, FpElement, PrimeField, field_of


class Matrix:
    """Immutable ``rows x cols`` matrix with entries in a single field."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data: Sequence[Sequence], field: Field | None = None, cols: int | None = None):
        data = [list(r) for r in data]
        if field is None:
            field = _guess_field(data)
        ncols = len(data[0]) if data else (cols or 0)
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged matrix rows")
        self.rows = len(data)
        self.cols = ncols
        self.field = field
        self._data = tuple(tuple(field(x) for x in r) for r in data)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls([[field.zero] * cols for _ in range(rows)], field, cols=cols)

    @property
    def entries(self) -> list:
        """Row-major flat list of entries."""
        return [x for r in self._data for x in r]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self._data)], self.field, cols=self.rows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            oc = other.transpose()._data
            zero = self.field.zero
            return Matrix(
                [[sum((a * b for a, b in zip(r, c)), zero) for c in oc] for r in self._data],
                self.field,
                cols=other.cols,
            )
        v = list(other)
        if len(v) != self.cols:
            raise ShapeError("vector length does not match matrix columns")
        return mat_vec(self._data, v, self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ShapeError("column counts differ")
        return Matrix([*self._data, *other._data], self.field, cols=self.cols)


def _guess_field(data) -> Field:
    for r in data:
        for x in r:
            if isinstance(x, FpElement):
                return PrimeField(x.p)
    return QQ


def mat_vec(rows, v, field: Field) -> list:
    zero = field.zero
    return [sum((a * b for a, b in zip(r, v)), zero) for r in rows]


def as_matrix(m, field: Field | None = None) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m, field)


# -- Q helpers ---------------------------------------------------------------


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        d = Fraction(x).denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return [int(Fraction(x) * den) for x in row]


def _bareiss_echelon(rows: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place on integer rows.

    Returns ``(rank, sign)``; for a square full-rank input the last pivot is the
    determinant up to ``sign``.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = 1
    r = 0
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pr = rows[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            if f:
                rows[i] = [(pv * a - f * b) // prev for a, b in zip(ri, pr)]
            else:
                rows[i] = [(pv * a) // prev for a in ri]
        prev = pv
        r += 1
    return r, sign


def _rref_q(data) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in data]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        prow = m[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    ri = m[i]
                    for j in nz:
                        ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    m = as_matrix(m)
    f = m.field
    if isinstance(f, PrimeField):
        ints = [[x.value for x in r] for r in m._data]
        red, piv = _accel.rref_mod_p(ints, m.cols, f.p)
    else:
        red, piv = _rref_q(m._data)
    return Matrix(red, f, cols=m.cols), list(piv)


def rank(m) -> int:
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    if isinstance(m.field, PrimeField):
        return len(rref(m)[1])
    rows = [integer_row(r) for r in m._data]
    return _bareiss_echelon(rows)[0]


def nullspace(m) -> list[list]:
    """Basis of the right kernel, itself in reduced row echelon form."""
    m = as_matrix(m)
    f = m.field
    red, piv = rref(m)
    free = [c for c in range(m.cols) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(piv):
            v[pc] = -red[r, fc]
        basis.append(v)
    if not basis:
        return []
    canon, _ = rref(Matrix(basis, f))
    return canon.tolist()


def det(m):
    """Exact determinant (Bareiss over Q, elimination over F_p)."""
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ShapeError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    f = m.field
    n = m.rows
    if n == 0:
        return f.one
    if isinstance(f, PrimeField):
        return _det_mod_p(m)
    scale = Fraction(1)
    rows = []
    for r in m._data:
        ir = integer_row(r)
        nz = next((x for x in r if x), None)
        if nz is not None:
            scale *= Fraction(ir[r.index(nz)]) / Fraction(nz)
        rows.append(ir)
    rk, sign = _bareiss_echelon(rows)
    if rk < n:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def _det_mod_p(m: Matrix):
    f = m.field
    p = f.p
    a = [[x.value for x in r] for r in m._data]
    n = m.rows
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % p), None)
        if piv is None:
            return f.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c] % p
        inv = pow(a[c][c], p - 2, p)
        for i in range(c + 1, n):
            g = a[i][c] * inv % p
            if g:
                a[i] = [(x - g * y) % p for x, y in zip(a[i], a[c])]
    return f(d)


def solve(m, b) -> list | None:
    """One solution of ``m x = b``, or ``None`` when inconsistent."""
    m = as_matrix(m)
    f = m.field
    aug = Matrix([list(r) + [f(bi)] for r, bi in zip(m._data, b)], f, cols=m.cols + 1)
    red, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [f.zero] * m.cols
    for r, pc in enumerate(piv):
        x[pc] = red[r, m.cols]
    return x


def inverse_matrix(m) -> Matrix:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ShapeError("inverse of non-square matrix")
    f = m.field
    n = m.rows
    aug = Matrix([list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(m._data)], f)
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return Matrix([list(red.row(i))[n:] for i in range(n)], f)


def row_space_contains(rows, v) -> bool:
    if not rows:
        return all(x == 0 for x in v)
    f = field_of(v[0]) if v else QQ
    return rank(Matrix([*rows, v], f)) == rank(Matrix(rows, f))
