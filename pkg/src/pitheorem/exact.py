"""Exact integer/rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding. Rank and solving use fraction-free
(Bareiss) elimination with a deterministic pivot rule: leftmost column with
a nonzero entry, topmost such row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "as_int_matrix",
    "bareiss_echelon",
    "exact_rank",
    "solve_exact",
    "primitive_normalize",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if self.rows * self.cols != len(self.entries):
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"matrix entries must be int, got {type(e).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [tuple(int(v) for v in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(int(v) for v in c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        return cls(rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.column(j) for j in indices], rows=self.rows)

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [
            [sum(self[i, k] * other[k, j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, cols=other.cols)


def as_int_matrix(m) -> IntMatrix:
    """Coerce a nested sequence (rows) or IntMatrix into an IntMatrix."""
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(list(m))


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the reduced rows (a new list) and the pivot column of each of the
    first ``rank`` rows. All intermediate values stay integral because each
    update is divided exactly by the previous pivot.
    """
    a = [list(r) for r in rows]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                # exact by Sylvester's identity
                a[i][j] = (piv * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return a, pivots


def exact_rank(m) -> int:
    """Rank over the rationals of an integer matrix."""
    m = as_int_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    _, pivots = bareiss_echelon(m.to_rows())
    return len(pivots)


def solve_exact(a, b: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Solve ``a @ x == b`` exactly.

    Returns ``None`` for an inconsistent system. Free variables (if ``a`` is
    column-rank deficient) are set to zero, so a solution is always one
    particular solution; with full column rank it is the unique one.
    """
    a = as_int_matrix(a)
    b = [int(v) for v in b]
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    if a.cols == 0:
        return () if all(v == 0 for v in b) else None
    aug = [list(a.row(i)) + [b[i]] for i in range(a.rows)]
    ech, pivots = bareiss_echelon(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        acc = Fraction(ech[r][a.cols])
        for j in range(c + 1, a.cols):
            if ech[r][j]:
                acc -= ech[r][j] * x[j]
        x[c] = acc / ech[r][c]
    return tuple(x)


def primitive_normalize(w0, w: Sequence) -> tuple[int, tuple[int, ...]]:
    """Scale ``(w0, *w)`` to the unique primitive integer tuple with positive head.

    >>> primitive_normalize(Fraction(4, 3), [Fraction(2, 3), -2])
    (2, (1, -3))
    """
    vals = [Fraction(w0)] + [Fraction(v) for v in w]
    if vals[0] == 0:
        raise ValueError("leading exponent is zero; no distinguished tuple exists")
    den = lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    g = gcd(*ints)
    if ints[0] < 0:
        g = -g
    ints = [v // g for v in ints]
    return ints[0], tuple(ints[1:])
