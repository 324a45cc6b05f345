"""Exact integer and rational linear algebra.

Everything here works on Python ``int`` and :class:`fractions.Fraction`
entries, so results are exact regardless of size. Matrices may be given as
nested sequences, numpy arrays (integer or object dtype) or :class:`Matrix`
instances; the helpers normalise them with :func:`to_rows`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "Matrix",
    "SmithDecomposition",
    "to_rows",
    "smith_normal_form",
    "rank",
    "kernel_rank",
    "kernel_basis",
    "solve_in_basis",
    "matrix_order",
    "matmul",
    "identity",
    "inverse",
    "determinant",
    "transpose",
    "hermite_row_basis",
    "common_denominator",
    "parse_rational",
]


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, (int, np.integer)):
        return Fraction(int(s))
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot interpret {s!r} as an exact rational")


def to_rows(M) -> list[list[Fraction]]:
    """Return ``M`` as a list of rows of Fractions."""
    if isinstance(M, Matrix):
        return [list(r) for r in M.row_list()]
    if isinstance(M, np.ndarray):
        return [[parse_rational(x) for x in row] for row in M.tolist()]
    return [[parse_rational(x) for x in row] for row in M]


def _int_rows(M) -> list[list[int]]:
    rows = to_rows(M)
    out = []
    for r in rows:
        if any(x.denominator != 1 for x in r):
            raise ValueError("integer matrix expected")
        out.append([int(x) for x in r])
    return out


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


@dataclass(frozen=True)
class Matrix:
    """Immutable exact rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")
        object.__setattr__(self, "entries", tuple(parse_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = to_rows(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    def row_list(self) -> list[list[Fraction]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_rows(matmul(self.row_list(), other.row_list()))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.entries)

    def to_numpy(self) -> np.ndarray:
        """int64 array when integral (and small), otherwise an object array."""
        if self.is_integral() and all(abs(x) < 2**62 for x in self.entries):
            return np.array([int(x) for x in self.entries], dtype=np.int64).reshape(self.rows, self.cols)
        return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self.row_list()],
        }

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        m = cls.from_rows(obj["entries"]) if obj["entries"] else cls(obj["rows"], obj["cols"], ())
        if (m.rows, m.cols) != (obj["rows"], obj["cols"]):
            raise ValueError("declared shape does not match entries")
        return m


@dataclass(frozen=True)
class SmithDecomposition:
    left: Matrix
    right: Matrix
    diagonal: tuple


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A) -> list[list]:
    A = to_rows(A)
    return [list(c) for c in zip(*A)] if A else []


def matmul(A, B) -> list[list[Fraction]]:
    A, B = to_rows(A), to_rows(B)
    if A and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matmul")
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in Bt] for r in A]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M) -> SmithDecomposition:
    """Smith decomposition ``left @ M @ right = diag(d_1, d_2, ...)``.

    Pivots on the entry of least absolute value; ``left`` and ``right`` are
    unimodular and each nonzero ``d_i`` divides ``d_{i+1}``.
    """
    A = _int_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        if q:
            for r in A:
                r[dst] -= q * r[src]
            for r in V:
                r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, A[i][t] // A[t][t])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if not done:
                # bring the smallest remainder in row/column t to the pivot
                cands = [(abs(A[i][t]), i, None) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands, key=lambda c: c[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            i, _ = bad
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SmithDecomposition(Matrix.from_rows(U) if m else Matrix(0, 0, ()),
                              Matrix.from_rows(V) if n else Matrix(0, 0, ()),
                              diag)


# ---------------------------------------------------------------------------
# Gaussian elimination


def _echelon(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = to_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def _bareiss_rank(A: list[list[int]]) -> int:
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    prev = 1
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            A[i] = [(piv * x - a * y) // prev for x, y in zip(A[i], A[r])]
        prev = piv
        r += 1
        if r == m:
            break
    return r


def rank(M) -> int:
    if isinstance(M, np.ndarray) and M.dtype.kind == "i":
        return _bareiss_rank(M.tolist())
    rows = to_rows(M)
    if not rows:
        return 0
    d = common_denominator(x for r in rows for x in r)
    return _bareiss_rank([[int(x * d) for x in r] for r in rows])


def kernel_rank(M) -> int:
    """Dimension of the rational null space of a square matrix."""
    if isinstance(M, np.ndarray) and M.dtype.kind == "i":
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("square matrix expected")
        return M.shape[0] - rank(M)
    rows = to_rows(M)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("square matrix expected")
    return len(rows) - rank(rows)


def kernel_basis(M) -> list[list[Fraction]]:
    """Basis (as rows) of the right null space ``{x : M x = 0}``."""
    R, piv = _echelon(M)
    n = len(R[0]) if R else 0
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def determinant(M) -> Fraction:
    A = to_rows(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("square matrix expected")
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def inverse(M) -> list[list[Fraction]]:
    A = to_rows(M)
    n = len(A)
    aug = [r + e for r, e in zip(A, identity(n))]
    R, piv = _echelon(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in R]


def solve_in_basis(basis, x: Sequence) -> Optional[list[Fraction]]:
    """Coordinates ``c`` with ``c @ basis == x``, or None outside the span.

    ``basis`` holds one generator per row; the rows must be independent.
    """
    B = to_rows(basis)
    x = [parse_rational(v) for v in x]
    if B and len(B[0]) != len(x):
        raise ValueError(f"vector of length {len(x)} against basis of width {len(B[0])}")
    k = len(B)
    if k == 0:
        return [] if all(v == 0 for v in x) else None
    # solve B^T c = x
    aug = [[B[i][j] for i in range(k)] + [x[j]] for j in range(len(x))]
    R, piv = _echelon(aug)
    if k in piv:
        return None
    if len(piv) < k:
        raise ValueError("basis rows are linearly dependent")
    c = [Fraction(0)] * k
    for i, p in enumerate(piv):
        c[p] = R[i][k]
    return c


def hermite_row_basis(gens) -> list[list[int]]:
    """Row-style Hermite normal form basis of the Z-span of integer rows."""
    A = [r[:] for r in _int_rows(gens)]
    if not A:
        return []
    n = len(A[0])
    basis = []
    r0 = 0
    for c in range(n):
        rows = [i for i in range(r0, len(A)) if A[i][c]]
        if not rows:
            continue
        while len(rows) > 1:
            p = min(rows, key=lambda i: abs(A[i][c]))
            for i in rows:
                if i != p:
                    q = A[i][c] // A[p][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[p])]
            rows = [i for i in rows if A[i][c]]
        p = rows[0]
        A[r0], A[p] = A[p], A[r0]
        if A[r0][c] < 0:
            A[r0] = [-a for a in A[r0]]
        for i in range(r0):
            q = A[i][c] // A[r0][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
        r0 += 1
    basis = [r for r in A[:r0]]
    return basis


def matrix_order(M, cap: int = 10**4) -> Optional[int]:
    """Least ``k <= cap`` with ``M**k == I``; None if there is none."""
    rows = to_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("square matrix expected")
    if rank(rows) < n:
        raise ValueError("singular matrix has no finite order")
    if all(x.denominator == 1 for r in rows for x in r):
        # exact integer powers on Python ints
        A = np.array([[int(x) for x in r] for r in rows], dtype=object)
        I = np.eye(n, dtype=np.int64).astype(object)
        P = A
        for k in range(1, cap + 1):
            if np.array_equal(P, I):
                return k
            P = P.dot(A)
        return None
    I = identity(n)
    P = rows
    for k in range(1, cap + 1):
        if P == I:
            return k
        P = matmul(P, rows)
    return None


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
