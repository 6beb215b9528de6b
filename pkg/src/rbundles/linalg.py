"""Dense exact linear algebra over QQ or GF(p)."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Matrix:
    """An immutable rows x cols matrix of field elements."""

    field: object
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, field, rows, cols: int | None = None) -> Matrix:
        rows = [tuple(field(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n: int) -> Matrix:
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.cols)]
            out = tuple(
                tuple(_dot(r, c, self.field) for c in cols) for r in self.entries
            )
            return Matrix(self.field, self.rows, other.cols, out)
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(_dot(r, v, self.field) for r in self.entries)

    def stack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[tuple]:
        return kernel_basis(self)

    def det(self):
        return det(self)


def _dot(a, b, field):
    s = field.zero
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Matrix) -> int:
    """Row rank of m.  Plain forward elimination, no back substitution."""
    a = [list(r) for r in m.entries if any(r)]
    rk = 0
    for c in range(m.cols):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk]
        pc = p[c]
        for i in range(rk + 1, len(a)):
            if a[i][c]:
                f = a[i][c] / pc
                a[i] = [x - f * y for x, y in zip(a[i], p)]
        rk += 1
        if rk == len(a):
            break
    return rk


def kernel_basis(m: Matrix) -> list[tuple]:
    """A basis of {v : m v = 0}; empty when m is injective."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    zero, one = m.field.zero, m.field.one
    basis = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b) -> tuple | None:
    """One solution x of m x = b, or None when the system is inconsistent."""
    b = tuple(m.field(x) for x in b)
    if len(b) != m.rows:
        raise ValueError("shape mismatch")
    aug = Matrix(m.field, m.rows, m.cols + 1, tuple(r + (bi,) for r, bi in zip(m.entries, b)))
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [m.field.zero] * m.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[m.cols]
    return tuple(x)


def det(m: Matrix):
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    d = m.field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return m.field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def same_row_space(m1: Matrix, m2: Matrix) -> bool:
    """Whether two matrices with equally many columns have the same row space."""
    r1, r2 = rank(m1), rank(m2)
    return r1 == r2 == rank(m1.stack(m2))
