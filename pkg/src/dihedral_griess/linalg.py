"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; there is no
floating point and no tolerance.  Matrices are small and dense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(q) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of Fraction

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "Matrix":
        data = [[to_rational(x) for x in row] for row in rows]
        n_rows = len(data)
        n_cols = len(data[0]) if data else 0
        if any(len(r) != n_cols for r in data):
            raise ValueError("ragged rows")
        return cls(n_rows, n_cols, tuple(x for r in data for x in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.col(j) for j in range(self.cols)])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            cols = [other.col(j) for j in range(other.cols)]
            return Matrix.from_rows(
                [[sum((a * b for a, b in zip(self.row(i), c)), Fraction(0)) for c in cols]
                 for i in range(self.rows)]
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0))
                for i in range(self.rows)]

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __pow__(self, k: int) -> "Matrix":
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        result, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def quadratic_form(G: Matrix, x: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(x, G @ x)), Fraction(0))


def rref(A: Matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in A.to_rows()]
    pivots = []
    r = 0
    for c in range(A.cols):
        pivot = next((i for i in range(r, A.rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(A.rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == A.rows:
            break
    return m, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def determinant(A: Matrix) -> Fraction:
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in A.to_rows()]
    n = A.rows
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def nullspace(A: Matrix) -> list:
    """Basis of the right kernel, one vector per free column (ascending)."""
    m, pivots = rref(A)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * A.cols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class LinearSolution:
    consistent: bool
    particular: tuple = ()
    free_columns: tuple = ()
    kernel: tuple = ()  # one direction per free column

    @property
    def unique(self) -> bool:
        return self.consistent and not self.free_columns


def solve_linear(A: Matrix, b: Sequence) -> LinearSolution:
    """Solve ``A x = b`` exactly.

    Underdetermined systems come back in reduced echelon parameterization:
    free variables (ascending column order) are set to zero in the particular
    solution and each contributes one kernel direction.
    """
    b = [to_rational(x) for x in b]
    if A.rows != len(b):
        raise ValueError(f"dimension mismatch: {A.rows} rows but {len(b)} right-hand sides")
    aug = Matrix.from_rows([A.row(i) + [b[i]] for i in range(A.rows)]) if A.rows else None
    if aug is None:
        return LinearSolution(True, tuple(Fraction(0) for _ in range(A.cols)),
                              tuple(range(A.cols)), tuple(tuple(v) for v in nullspace(A)))
    m, pivots = rref(aug)
    if A.cols in pivots:
        return LinearSolution(False)
    x = [Fraction(0)] * A.cols
    for row, pc in enumerate(pivots):
        x[pc] = m[row][A.cols]
    free = tuple(c for c in range(A.cols) if c not in pivots)
    return LinearSolution(True, tuple(x), free, tuple(tuple(v) for v in nullspace(A)))


@dataclass(frozen=True)
class PSDCertificate:
    rank: int
    is_psd: bool
    is_pd: bool
    witness: tuple | None = None  # x with x^T G x < 0 when not PSD
    pivots: tuple = field(default=())  # elimination order actually used


def psd_certificate(G: Matrix) -> PSDCertificate:
    """Exact positive-semidefiniteness test by pivoted symmetric elimination.

    The pivot at every step is the first remaining index (in column order)
    with a nonzero diagonal entry of the current Schur complement.  A negative
    pivot, or a zero diagonal with a nonzero off-diagonal, yields a witness
    vector lifted back to the original coordinates.
    """
    if not G.is_symmetric():
        raise ValueError("psd_certificate needs a symmetric matrix")
    n = G.rows
    S = [list(r) for r in G.to_rows()]
    # lift[i] is the original-coordinate vector whose G-norm is S[i][i]
    lift = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    remaining = list(range(n))
    pivots = []
    while remaining:
        p = next((i for i in remaining if S[i][i] != 0), None)
        if p is None:
            # all remaining diagonals vanish; PSD only if the block is zero
            for i in remaining:
                for j in remaining:
                    if S[i][j] != 0:
                        t = -(S[j][j] + 1) / (2 * S[i][j])
                        w = tuple(t * a + b for a, b in zip(lift[i], lift[j]))
                        return PSDCertificate(rank(G), False, False, w, tuple(pivots))
            break
        if S[p][p] < 0:
            return PSDCertificate(rank(G), False, False, tuple(lift[p]), tuple(pivots))
        pivots.append(p)
        remaining.remove(p)
        for i in remaining:
            f = S[i][p] / S[p][p]
            if f == 0:
                continue
            for j in remaining:
                S[i][j] -= f * S[p][j]
            lift[i] = [a - f * b for a, b in zip(lift[i], lift[p])]
    r = len(pivots)
    return PSDCertificate(r, True, r == n, None, tuple(pivots))


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    p, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and d * d == q.denominator:
        return Fraction(p, d)
    return None


@dataclass(frozen=True)
class QuadraticRoots:
    roots: tuple  # sorted, distinct, rational
    irrational: bool = False  # real roots exist but are not rational


def solve_quadratic(a, b, c) -> QuadraticRoots:
    """All rational roots of ``a t^2 + b t + c``; ``a == 0`` degrades to linear."""
    a, b, c = to_rational(a), to_rational(b), to_rational(c)
    if a == b == c == 0:
        raise ValueError("all coefficients are zero")
    if a == 0:
        if b == 0:
            return QuadraticRoots(())
        return QuadraticRoots((-c / b,))
    disc = b * b - 4 * a * c
    if disc < 0:
        return QuadraticRoots(())
    s = _rational_sqrt(disc)
    if s is None:
        return QuadraticRoots((), irrational=True)
    roots = sorted({(-b - s) / (2 * a), (-b + s) / (2 * a)})
    return QuadraticRoots(tuple(roots))
