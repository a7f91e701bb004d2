"""Exact linear algebra over the rationals.

Row reduction is fraction-free (Bareiss): rows are scaled to integers,
elimination keeps all intermediate entries integral, and Fractions only
reappear during back substitution.  Everything here is deterministic:
pivots are chosen as the first usable row, never by magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Row = tuple[Fraction, ...]


def _to_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank preserving)."""
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*[f.denominator for f in fracs]) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def _bareiss(matrix: list[list[int]]) -> tuple[list[list[int]], list[int], list[int]]:
    """Fraction-free row echelon form.

    Returns (echelon rows, pivot column indices, pivot original-row order).
    The matrix is modified in place; rows are swapped but never scaled by
    anything non-integral, and the exact divisions of the Bareiss update
    cannot leave remainders.
    """
    if not matrix:
        return matrix, [], []
    nrows, ncols = len(matrix), len(matrix[0])
    row_ids = list(range(nrows))
    pivots: list[int] = []
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if matrix[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        row_ids[rank], row_ids[pivot_row] = row_ids[pivot_row], row_ids[rank]
        pivot = matrix[rank][col]
        row_r = matrix[rank]
        for i in range(rank + 1, nrows):
            # Bareiss update applies to every row, zero head included:
            # the uniform *pivot//prev rescale is what keeps later
            # divisions exact.
            head = matrix[i][col]
            row_i = matrix[i]
            if head == 0:
                for j in range(col + 1, ncols):
                    if row_i[j]:
                        row_i[j] = row_i[j] * pivot // prev
            else:
                for j in range(col + 1, ncols):
                    row_i[j] = (row_i[j] * pivot - head * row_r[j]) // prev
                row_i[col] = 0
        pivots.append(col)
        rank += 1
        prev = pivot
        if rank == nrows:
            break
    return matrix, pivots, row_ids


def rank_of_rows(rows: Sequence[Sequence]) -> int:
    _, pivots, _ = _bareiss(_to_integer_rows(rows))
    return len(pivots)


def nullspace_of_rows(rows: Sequence[Sequence], ncols: int | None = None) -> list[Row]:
    """Basis of {x : M x = 0}, one vector per free column, in column order."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("cannot infer the number of columns")
        ncols = len(rows[0])
    if not rows:
        identity = []
        for i in range(ncols):
            v = [Fraction(0)] * ncols
            v[i] = Fraction(1)
            identity.append(tuple(v))
        return identity
    echelon, pivots, _ = _bareiss(_to_integer_rows(rows))
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis: list[Row] = []
    for free in free_cols:
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for level in range(len(pivots) - 1, -1, -1):
            pc = pivots[level]
            row = echelon[level]
            acc = Fraction(0)
            for c in range(pc + 1, ncols):
                if row[c] and vec[c]:
                    acc += Fraction(row[c]) * vec[c]
            vec[pc] = -acc / row[pc]
        basis.append(tuple(vec))
    return basis


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> Row | None:
    """One exact solution of M x = b, or None if inconsistent."""
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    echelon, pivots, _ = _bareiss(_to_integer_rows(aug))
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for level in range(len(pivots) - 1, -1, -1):
        pc = pivots[level]
        row = echelon[level]
        acc = Fraction(row[n])
        for c in range(pc + 1, n):
            if row[c] and x[c]:
                acc -= Fraction(row[c]) * x[c]
        x[pc] = acc / row[pc]
    return tuple(x)


def independent_row_indices(rows: Sequence[Sequence]) -> list[int]:
    """Greedy front-to-back selection of rows that increase the rank.

    Used for complement/basis extraction where the choice must prefer
    earlier rows; plain Fraction elimination keeps the bookkeeping simple.
    """
    reduced: list[tuple[int, list[Fraction]]] = []  # (pivot col, unit row)
    chosen: list[int] = []
    for idx, raw in enumerate(rows):
        vec = [Fraction(x) for x in raw]
        for pivot_col, unit in reduced:
            c = vec[pivot_col]
            if c:
                for j in range(pivot_col, len(vec)):
                    vec[j] -= c * unit[j]
        pivot_col = next((j for j, v in enumerate(vec) if v), None)
        if pivot_col is None:
            continue
        inv = Fraction(1) / vec[pivot_col]
        unit = [v * inv for v in vec]
        reduced.append((pivot_col, unit))
        reduced.sort(key=lambda item: item[0])
        chosen.append(idx)
    return chosen


def in_row_span(rows: Sequence[Sequence], target: Sequence) -> bool:
    base = rank_of_rows(rows) if rows else 0
    return rank_of_rows(list(rows) + [list(target)]) == base


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    entries: tuple[Row, ...]

    @staticmethod
    def from_rows(rows: Iterable[Sequence]) -> "RationalMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        return RationalMatrix(data)

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return rank_of_rows(self.entries)

    def nullspace(self) -> list[Row]:
        return nullspace_of_rows(self.entries, self.ncols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries))) if self.entries else self

    def multiply(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose().entries
        return RationalMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.entries)
