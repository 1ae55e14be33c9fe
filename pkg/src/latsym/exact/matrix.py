"""Dense matrices over the rationals and over Q[λ].

ExactMatrix is immutable. Products go through an integer-scaled path
(clear denominators, multiply Python ints, divide once) which is much
faster than multiplying Fractions entry by entry.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .poly import Poly, _frac


class ExactMatrix:
    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        e = tuple(_frac(x) for x in entries)
        if rows < 0 or cols < 0 or len(e) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(e)}")
        self.rows = rows
        self.cols = cols
        self._e = e

    # constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, (x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "ExactMatrix":
        """Matrix P with P e_i = e_{images[i]} (0-based images)."""
        n = len(images)
        e = [0] * (n * n)
        for i, j in enumerate(images):
            e[j * n + i] = 1
        return cls(n, n, e)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def entries(self) -> tuple[Fraction, ...]:
        return self._e

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        return np.array([float(x) for x in self._e], dtype=float).reshape(self.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        c = self.cols
        return ExactMatrix(len(rows), len(cols), (self._e[i * c + j] for i in rows for j in cols))

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._e[i * self.cols + i] for i in range(min(self.rows, self.cols)))

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def max_abs(self) -> Fraction:
        return max((abs(x) for x in self._e), default=Fraction(0))

    def max_row_sum(self) -> Fraction:
        """Infinity norm (max absolute row sum)."""
        return max((sum(abs(x) for x in self.row(i)) for i in range(self.rows)), default=Fraction(0))

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    # arithmetic -------------------------------------------------------------
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix(self.rows, self.cols, (a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        _same_shape(self, other)
        return ExactMatrix(self.rows, self.cols, (a - b for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, (-a for a in self._e))

    def scale(self, s) -> "ExactMatrix":
        s = _frac(s)
        return ExactMatrix(self.rows, self.cols, (a * s for a in self._e))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a, da = self.scaled_ints()
        b, db = other.scaled_ints()
        n, k, m = self.rows, self.cols, other.cols
        d = da * db
        out = []
        for i in range(n):
            ai = a[i * k:(i + 1) * k]
            for j in range(m):
                s = 0
                for t in range(k):
                    x = ai[t]
                    if x:
                        s += x * b[t * m + j]
                out.append(Fraction(s, d))
        return ExactMatrix(n, m, out)

    def scaled_ints(self) -> tuple[list[int], int]:
        """(integers, D) with self == integers / D entrywise."""
        d = lcm(*(x.denominator for x in self._e)) if self._e else 1
        return [x.numerator * (d // x.denominator) for x in self._e], d

    def powers(self, kmax: int) -> list["ExactMatrix"]:
        """[M^0, M^1, ..., M^kmax] (square matrices only)."""
        if not self.is_square:
            raise ValueError("powers of a non-square matrix")
        out = [ExactMatrix.identity(self.rows)]
        for _ in range(kmax):
            out.append(out[-1] @ self)
        return out

    def commutes_with(self, other: "ExactMatrix") -> bool:
        return self @ other == other @ self

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


class Hamiltonian(ExactMatrix):
    """Square exact matrix with optional site labels and provenance metadata."""

    __slots__ = ("labels", "meta")

    def __init__(self, rows: int, cols: int, entries: Iterable, labels=None, meta=None):
        super().__init__(rows, cols, entries)
        if rows != cols:
            raise ValueError(f"Hamiltonian must be square, got {rows}x{cols}")
        self.labels = tuple(labels) if labels else tuple(str(i + 1) for i in range(rows))
        if len(self.labels) != rows:
            raise ValueError("one label per site required")
        self.meta = dict(meta or {})

    @classmethod
    def from_matrix(cls, m: ExactMatrix, labels=None, meta=None) -> "Hamiltonian":
        return cls(m.rows, m.cols, m.entries(), labels=labels, meta=meta)

    @property
    def n(self) -> int:
        return self.rows


def as_exact(m) -> ExactMatrix:
    """Coerce nested sequences / integer numpy arrays to an ExactMatrix."""
    if isinstance(m, ExactMatrix):
        return m
    if isinstance(m, np.ndarray):
        if m.dtype.kind == "f":
            raise TypeError("float arrays are not exact; pass Fractions, ints or strings")
        m = m.tolist()
    return ExactMatrix.from_rows(m)


def as_hamiltonian(m) -> Hamiltonian:
    if isinstance(m, Hamiltonian):
        return m
    return Hamiltonian.from_matrix(as_exact(m))


def _same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


# determinants ---------------------------------------------------------------

def det_exact(m: ExactMatrix) -> Fraction:
    """Determinant over Q by Gaussian elimination with exact pivots."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det *= piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                ri, rk = a[i], a[k]
                for j in range(k, n):
                    ri[j] -= f * rk[j]
    return det


def solve_exact(m: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve m x = b exactly (m square, invertible)."""
    n = m.rows
    a = [list(m.row(i)) + list(b.row(i)) for i in range(n)]
    w = n + b.cols
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return ExactMatrix(n, b.cols, (a[i][j] for i in range(n) for j in range(n, w)))


def poly_det(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free (Bareiss)
    elimination; every division is exact in Q[λ]."""
    n = len(mat)
    if n == 0:
        return Poly.const(1)
    a = [list(r) for r in mat]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return Poly()
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]).exact_div(prev)
            a[i][k] = Poly()
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d
