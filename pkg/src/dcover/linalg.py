"""Dense exact linear algebra over Q and F_p.

Over F_p the elimination runs on numpy integer arrays (int64 when p^2 fits,
object otherwise). Over Q the forward pass is fraction-free (Bareiss) on
integer rows; only back substitution touches Fractions. Pivoting is always the
first nonzero entry in column order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .polyring import QQ, Field

_INT64_SAFE = 3_000_000_000


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple
    field: Field = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(field(x) for r in rows for x in r), field)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field: Field = QQ, rows: int | None = None) -> Matrix:
        cols = [list(c) for c in cols]
        nrows = len(cols[0]) if cols else (rows or 0)
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)], field, cols=len(cols))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> Matrix:
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    @classmethod
    def identity(cls, k: int, field: Field = QQ) -> Matrix:
        return cls.from_rows([[1 if i == j else 0 for j in range(k)] for i in range(k)], field)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)), self.field)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            s = sum(a * b for a, b in zip(self.row(i), v))
            out.append(s if F.p is None else s % F.p)
        return out


# F_p backend

def _np_array(m: Matrix) -> np.ndarray:
    dtype = np.int64 if m.field.p < _INT64_SAFE else object
    a = np.array(m.entries, dtype=dtype).reshape(m.rows, m.cols) if m.rows and m.cols else np.zeros((m.rows, m.cols), dtype=dtype)
    return a % m.field.p


def _fp_eliminate(a: np.ndarray, p: int, reduced: bool, stop_col: int | None = None) -> list[int]:
    """In-place row reduction mod p; returns pivot columns."""
    rows, cols = a.shape
    stop = cols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    for c in range(stop):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        lo = 0 if reduced else r + 1
        col = a[lo:, c].copy()
        if reduced:
            col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            idx = hit + lo
            a[idx, c:] = (a[idx, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots


# Q backend

def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for i in range(m.rows):
        row = m.row(i)
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss(a: list[list[int]], stop_col: int | None = None) -> list[int]:
    """Fraction-free forward elimination in place; returns pivot columns."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    stop = cols if stop_col is None else stop_col
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(stop):
        if r == rows:
            break
        i = next((i for i in range(r, rows) if a[i][c]), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, rows):
            row = a[i]
            f = row[c]
            for j in range(c, cols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def _q_rref(m: Matrix, stop_col: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    a = _integer_rows(m)
    pivots = _bareiss(a, stop_col)
    rows = [[Fraction(x) for x in row] for row in a]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(r):
            f = rows[i][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
    return rows, pivots


def _rref_rows(m: Matrix, stop_col: int | None = None) -> tuple[list[list], list[int]]:
    if m.field.p is None:
        return _q_rref(m, stop_col)
    a = _np_array(m)
    pivots = _fp_eliminate(a, m.field.p, reduced=True, stop_col=stop_col)
    return [[int(x) for x in row] for row in a], pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    rows, pivots = _rref_rows(m)
    return Matrix(m.rows, m.cols, tuple(x for r in rows for x in r), m.field), tuple(pivots)


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p is None:
        return len(_bareiss(_integer_rows(m)))
    # eliminate along the shorter side
    a = _np_array(m)
    if a.shape[0] < a.shape[1]:
        a = np.ascontiguousarray(a.T)
    return len(_fp_eliminate(a, m.field.p, reduced=False))


def rank_of_array(a: np.ndarray, p: int) -> int:
    """Rank mod p of an integer array (consumed)."""
    if a.shape[0] < a.shape[1]:
        a = np.ascontiguousarray(a.T)
    return len(_fp_eliminate(a % p, p, reduced=False))


def nullspace(m: Matrix) -> list[tuple]:
    """Basis of the right kernel, one vector per free column."""
    F = m.field
    rows, pivots = _rref_rows(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [F.zero] * m.cols
        v[f] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(rows[r][f])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` (free variables zero), or None if inconsistent."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    F = m.field
    aug = Matrix(m.rows, m.cols + 1,
                 tuple(x for i in range(m.rows) for x in (*m.row(i), F(b[i]))), F)
    rows, pivots = _rref_rows(aug, stop_col=m.cols)
    # inconsistent iff some zero row of the coefficient part has nonzero rhs
    for r in range(len(pivots), m.rows):
        if rows[r][m.cols]:
            return None
    x = [F.zero] * m.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][m.cols]
    return tuple(x)
