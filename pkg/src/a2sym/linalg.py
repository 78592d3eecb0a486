"""Exact rational dense linear algebra: rank and row-span/coordinate-subspace
intersection dimension.

Everything here is integer or Fraction arithmetic; there is deliberately no
floating-point path.  Matrices in this project are small (at most a few dozen
rows/columns), so bignum growth under fraction-free elimination is harmless.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


class RationalMatrix:
    """Immutable dense matrix of exact rationals.

    Entries are canonical `fractions.Fraction` values (reduced, positive
    denominator).  Dimensions must be positive.
    """

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Sequence[Scalar]]):
        grid = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if not grid or not grid[0]:
            raise ValueError("matrix must have positive dimensions")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise ValueError("ragged rows")
        self.entries: tuple[tuple[Fraction, ...], ...] = grid

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.entries))

    def stack(self, extra_rows: Iterable[Sequence[Scalar]]) -> "RationalMatrix":
        """New matrix with `extra_rows` appended below."""
        return RationalMatrix(list(self.entries) + [list(r) for r in extra_rows])


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    # Row scaling leaves rank unchanged, so clear denominators per row.
    scaled = []
    for row in m.entries:
        mult = lcm(*(x.denominator for x in row))
        scaled.append([int(x * mult) for x in row])
    return scaled


def rank(m: RationalMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Pivots are chosen by maximal magnitude within the current column; the
    running division by the previous pivot is exact by the Bareiss identity.
    """
    a = _integer_rows(m)
    n_rows, n_cols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        piv = max(range(r, n_rows), key=lambda i: abs(a[i][c]), default=None)
        if piv is None or a[piv][c] == 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def intersect_rowspan_coords(m: RationalMatrix, cols: Iterable[int]) -> int:
    """dim( rowspan(m) ∩ span{e_j : j in cols} ).

    Computed as rank(m) + |cols| - rank(m stacked with the coordinate rows),
    the standard dim(U) + dim(W) - dim(U + W) identity.
    """
    col_set = sorted(set(cols))
    for j in col_set:
        if not 0 <= j < m.cols:
            raise IndexError(f"column index {j} out of range for {m.cols} columns")
    if not col_set:
        return 0
    unit_rows = []
    for j in col_set:
        e = [0] * m.cols
        e[j] = 1
        unit_rows.append(e)
    stacked = m.stack(unit_rows)
    return rank(m) + len(col_set) - rank(stacked)
