"""Independence, rank and adequate partitions of a dimension tuple."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exact import IntMatrix, exact_rank
from .quantity import DimensionMismatch, DimVector

__all__ = [
    "MAX_TUPLE_SIZE",
    "DimTuple",
    "AdequatePartition",
    "is_independent",
    "tuple_rank",
    "maximal_independent_subtuples",
    "adequate_partitions",
]

# Enumeration is exhaustive over C(n, r) subsets.
MAX_TUPLE_SIZE = 20


def _matrix(dims: Sequence[DimVector], m: int) -> IntMatrix:
    return IntMatrix.from_columns([d.exponents for d in dims], rows=m)


def is_independent(dims: Sequence[DimVector]) -> bool:
    """True iff the exponent vectors are linearly independent (vacuously for ``[]``)."""
    if not dims:
        return True
    m = len(dims[0])
    if any(len(d) != m for d in dims):
        raise DimensionMismatch("dimension vectors have different lengths")
    return exact_rank(_matrix(dims, m)) == len(dims)


@dataclass(frozen=True)
class DimTuple:
    """Named dimensions of the variables, one of which is the dependent one."""

    names: tuple[str, ...]
    dims: tuple[DimVector, ...]
    dependent_index: int

    def __post_init__(self) -> None:
        if len(self.names) != len(self.dims):
            raise ValueError("names and dims differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if not 0 <= self.dependent_index < len(self.names):
            raise IndexError("dependent_index out of range")
        if self.dims and any(len(d) != len(self.dims[0]) for d in self.dims):
            raise DimensionMismatch("dimension vectors have different lengths")

    @classmethod
    def from_pairs(cls, entries: Sequence[tuple[str, Sequence[int]]], dependent: str) -> "DimTuple":
        names = tuple(n for n, _ in entries)
        dims = tuple(d if isinstance(d, DimVector) else DimVector(d) for _, d in entries)
        if dependent not in names:
            raise KeyError(f"dependent variable {dependent!r} is not in the tuple")
        return cls(names, dims, names.index(dependent))

    @property
    def n_entries(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.dims[0]) if self.dims else 0

    @property
    def dependent(self) -> str:
        return self.names[self.dependent_index]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def matrix(self) -> IntMatrix:
        """Dimensional matrix with one column per entry."""
        return _matrix(self.dims, self.m)

    def transformed(self, u: IntMatrix) -> "DimTuple":
        return DimTuple(self.names, tuple(d.transformed(u) for d in self.dims), self.dependent_index)


@dataclass(frozen=True)
class AdequatePartition:
    a_indices: tuple[int, ...]
    b_indices: tuple[int, ...]
    c_index: int

    def names(self, t: DimTuple) -> tuple[tuple[str, ...], tuple[str, ...], str]:
        return (
            tuple(t.names[i] for i in self.a_indices),
            tuple(t.names[i] for i in self.b_indices),
            t.names[self.c_index],
        )


def tuple_rank(t: DimTuple) -> int:
    return exact_rank(t.matrix())


def maximal_independent_subtuples(t: DimTuple, exclude: int) -> list[tuple[int, ...]]:
    """All rank-sized independent index lists avoiding ``exclude``, in lexicographic order."""
    n = t.n_entries
    if not 0 <= exclude < n:
        raise IndexError("exclude index out of range")
    if n > MAX_TUPLE_SIZE:
        raise ValueError(
            f"dimension tuple has {n} entries; exhaustive enumeration is limited to {MAX_TUPLE_SIZE}"
        )
    r = tuple_rank(t)
    pool = [i for i in range(n) if i != exclude]
    return [
        combo
        for combo in combinations(pool, r)
        if is_independent([t.dims[i] for i in combo])
    ]


def adequate_partitions(t: DimTuple) -> list[AdequatePartition]:
    c = t.dependent_index
    out = []
    for a in maximal_independent_subtuples(t, c):
        b = tuple(i for i in range(t.n_entries) if i != c and i not in a)
        out.append(AdequatePartition(a, b, c))
    return out
