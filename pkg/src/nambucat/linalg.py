"""Exact rational linear algebra: vectors, matrices, nullspaces, ranks, determinants.

Everything is built on ``fractions.Fraction``, so all results are exact;
no operation ever rounds. Solution-space bases are returned in reduced
echelon normal form, which makes them canonical: two calls on equal
matrices return identical bases.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Union[Fraction, int, str]

_FRAC_RE = re.compile(r"[+-]?\d+(/\d+)?")


def frac(x: Rational) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _FRAC_RE.fullmatch(x.strip()):
            raise ValueError(f"not a 'p' or 'p/q' rational string: {x!r}")
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


def frac_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (always lowest terms, q > 0)."""
    return str(x)


class Vector:
    """Immutable exact-rational vector."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Rational]):
        self.entries = tuple(frac(e) for e in entries)

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls([0] * dim)

    @classmethod
    def basis(cls, dim: int, i: int) -> "Vector":
        return cls([1 if j == i else 0 for j in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "Vector") -> "Vector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Vector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "Vector") -> "Vector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return Vector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self) -> "Vector":
        return Vector(-a for a in self.entries)

    def scale(self, c: Rational) -> "Vector":
        c = frac(c)
        return Vector(c * a for a in self.entries)

    def dot(self, other: "Vector") -> Fraction:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Vector([{', '.join(frac_str(e) for e in self.entries)}])"


def kron_vec(a: Vector, b: Vector) -> Vector:
    """Kronecker (tensor) product of two coordinate vectors."""
    return Vector([x * y for x in a.entries for y in b.entries])


class Matrix:
    """Immutable exact-rational matrix, row-major storage."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[Rational]):
        self.rows = rows
        self.cols = cols
        self.entries = tuple(frac(e) for e in entries)
        if len(self.entries) != rows * cols:
            raise ValueError("entries length does not match rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, [e for row in rows for e in row])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[Rational]) -> "Matrix":
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Vector]) -> "Matrix":
        if not cols:
            return cls(0, 0, [])
        d = cols[0].dim
        return cls(d, len(cols), [cols[j][i] for i in range(d) for j in range(len(cols))])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return Vector(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> Vector:
        return Vector(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def apply(self, v: Vector) -> Vector:
        """Matrix-vector product."""
        if v.dim != self.cols:
            raise ValueError("dimension mismatch")
        e = self.entries
        c = self.cols
        return Vector(
            sum((e[i * c + j] * v.entries[j] for j in range(c) if v.entries[j]), Fraction(0))
            for i in range(self.rows)
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entries[k * other.cols + j]
                                for k in range(self.cols) if ri[k]), Fraction(0)))
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c: Rational) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols, (c * a for a in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      (self.entries[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def power(self, k: int) -> "Matrix":
        """k-th power for square matrices; k = 0 gives the identity."""
        if self.rows != self.cols:
            raise ValueError("not square")
        if k < 0:
            raise ValueError("negative power")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def flatten(self) -> Vector:
        return Vector(self.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        rows = "; ".join(
            " ".join(frac_str(self[i, j]) for j in range(self.cols))
            for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {rows})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product of matrices."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                aij = a[i, j]
                for l in range(b.cols):
                    out.append(aij * b[k, l])
    return Matrix(a.rows * b.rows, a.cols * b.cols, out)


def _rref(rows: list) -> tuple:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(m: Matrix) -> tuple:
    """Reduced row echelon form of m; returns (Matrix, pivot columns)."""
    rows, pivots = _rref(m.row_list())
    return Matrix.from_rows(rows) if rows else m, pivots


def rank(m: Matrix) -> int:
    """Exact rank."""
    _, pivots = _rref(m.row_list())
    return len(pivots)


def nullspace(m: Matrix) -> list:
    """Exact basis of {v : m v = 0}, canonicalized to echelon normal form.

    An empty or zero matrix yields the full-space standard basis.
    """
    n = m.cols
    if m.rows == 0 or n == 0:
        return [Vector.basis(n, i) for i in range(n)]
    rows, pivots = _rref(m.row_list())
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    if not basis:
        return []
    # canonicalize representatives: echelon-reduce the basis itself
    basis, _ = _rref(basis)
    return [Vector(row) for row in basis]


def det(m: Matrix) -> Fraction:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.row_list()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """One exact solution of m x = b, or None if the system is inconsistent."""
    if b.dim != m.rows:
        raise ValueError("dimension mismatch")
    n = m.cols
    aug = [list(row) + [b[i]] for i, row in enumerate(m.row_list())]
    rows, pivots = _rref(aug)
    for r in range(len(pivots), len(rows)):
        if rows[r][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        if p == n:
            return None
        x[p] = rows[r][n]
    return Vector(x)


def solve_matrix(m: Matrix, rhs: Matrix) -> Optional[Matrix]:
    """Solve m X = rhs column by column; None if any column is inconsistent."""
    cols = []
    for j in range(rhs.cols):
        x = solve(m, rhs.col(j))
        if x is None:
            return None
        cols.append(x)
    return Matrix.from_columns(cols)


def in_span(basis: Sequence[Vector], v: Vector) -> Optional[Vector]:
    """Coefficients expressing v in the given basis, or None if v is outside."""
    if not basis:
        return Vector([]) if v.is_zero() else None
    m = Matrix.from_columns(list(basis))
    return solve(m, v)
