"""Quantities as exact measure/dimension pairs.

Dimensions live in a free abelian group; with a fixed ambient basis of ``m``
base dimensions each one is an integer exponent vector (:class:`DimVector`).
A :class:`Quantity` is a rational measure times a dimension, and a
:class:`LocalBasis` is a tuple of nonzero quantities with independent
dimensions, relative to which any spanned quantity expands uniquely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import IntMatrix, exact_rank, solve_exact

__all__ = [
    "DimVector",
    "Quantity",
    "LocalBasis",
    "DimensionMismatch",
    "ZeroQuantityError",
    "ExpansionError",
    "NotInSpanError",
    "FractionalExponentError",
    "unit",
    "q_mul",
    "q_inv",
    "q_pow",
    "expand",
    "nu",
]


class DimensionMismatch(ValueError):
    pass


class ZeroQuantityError(ZeroDivisionError):
    """Raised when a zero quantity would have to be inverted."""


class ExpansionError(ValueError):
    pass


class NotInSpanError(ExpansionError):
    """The dimension is outside the rational span of the basis."""


class FractionalExponentError(ExpansionError):
    """The dimension is in the rational span only with non-integer exponents."""


@dataclass(frozen=True)
class DimVector:
    """Integer exponents over the ambient base dimensions."""

    exponents: tuple[int, ...]

    def __init__(self, exponents: Iterable[int]):
        object.__setattr__(self, "exponents", tuple(int(e) for e in exponents))

    @classmethod
    def identity(cls, m: int) -> "DimVector":
        return cls((0,) * m)

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def _check(self, other: "DimVector") -> None:
        if len(self) != len(other):
            raise DimensionMismatch(
                f"ambient dimension counts differ: {len(self)} vs {len(other)}"
            )

    def __add__(self, other: "DimVector") -> "DimVector":
        self._check(other)
        return DimVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: "DimVector") -> "DimVector":
        self._check(other)
        return DimVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "DimVector":
        return DimVector(-a for a in self)

    def __mul__(self, k: int) -> "DimVector":
        return DimVector(k * a for a in self)

    __rmul__ = __mul__

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def transformed(self, u: IntMatrix) -> "DimVector":
        """Re-express under a change of base dimensions (``u @ self``)."""
        if u.cols != len(self):
            raise DimensionMismatch("transform width does not match dimension count")
        return DimVector(sum(u[i, k] * self[k] for k in range(u.cols)) for i in range(u.rows))


@dataclass(frozen=True)
class Quantity:
    measure: Fraction
    dim: DimVector

    def __init__(self, measure, dim):
        if not isinstance(dim, DimVector):
            dim = DimVector(dim)
        object.__setattr__(self, "measure", Fraction(measure))
        object.__setattr__(self, "dim", dim)

    @property
    def is_zero(self) -> bool:
        return self.measure == 0

    def __mul__(self, other: "Quantity") -> "Quantity":
        return q_mul(self, other)

    def __pow__(self, k: int) -> "Quantity":
        return q_pow(self, k)


def unit(m: int) -> Quantity:
    """The unit quantity ``1_Q`` in an ``m``-dimensional ambient basis."""
    return Quantity(1, DimVector.identity(m))


def q_mul(x: Quantity, y: Quantity) -> Quantity:
    return Quantity(x.measure * y.measure, x.dim + y.dim)


def q_inv(x: Quantity) -> Quantity:
    if x.measure == 0:
        raise ZeroQuantityError("a zero quantity is not invertible")
    return Quantity(1 / x.measure, -x.dim)


def q_pow(x: Quantity, k: int) -> Quantity:
    """Integer power; ``x**0`` is the unit even when ``x`` is zero."""
    if k == 0:
        return unit(len(x.dim))
    if k < 0:
        x = q_inv(x)
        k = -k
    return Quantity(x.measure ** k, x.dim * k)


@dataclass(frozen=True)
class LocalBasis:
    """Nonzero quantities whose dimensions are linearly independent.

    An empty basis stands for ``(1_Q)`` and only spans the identity dimension;
    pass ``m`` explicitly in that case.
    """

    elements: tuple[Quantity, ...]
    m: int = field(default=-1)

    def __init__(self, elements: Sequence[Quantity], m: int | None = None):
        elements = tuple(elements)
        if m is None:
            if not elements:
                raise ValueError("an empty local basis needs an explicit ambient size m")
            m = len(elements[0].dim)
        for e in elements:
            if len(e.dim) != m:
                raise DimensionMismatch("basis element has the wrong ambient dimension count")
            if e.measure == 0:
                raise ZeroQuantityError("local basis elements must be nonzero quantities")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "m", m)
        if exact_rank(self.matrix) != len(elements):
            raise ValueError("local basis dimensions are not linearly independent")

    @property
    def r(self) -> int:
        return len(self.elements)

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([e.dim.exponents for e in self.elements], rows=self.m)


def expand(q: Quantity, basis: LocalBasis) -> tuple[Fraction, tuple[int, ...]]:
    """Unique expansion ``q = mu * prod(e_j ** k_j)`` with integer ``k_j``."""
    if len(q.dim) != basis.m:
        raise DimensionMismatch("quantity and basis use different ambient dimension counts")
    sol = solve_exact(basis.matrix, q.dim.exponents)
    if sol is None:
        raise NotInSpanError(f"dimension {q.dim.exponents} is not spanned by the local basis")
    if any(v.denominator != 1 for v in sol):
        raise FractionalExponentError(
            f"dimension {q.dim.exponents} needs fractional exponents {[str(v) for v in sol]}"
        )
    exps = tuple(int(v) for v in sol)
    scale = Fraction(1)
    for e, k in zip(basis.elements, exps):
        scale *= e.measure ** k
    return q.measure / scale, exps


def nu(yk: Quantity, delta: Quantity, basis: LocalBasis) -> Fraction:
    """Basis-independent ratio ``mu_E(yk) / mu_E(delta)`` for equal dimensions."""
    if yk.dim != delta.dim:
        raise DimensionMismatch("nu requires quantities of the same dimension")
    if delta.measure == 0:
        raise ZeroQuantityError("nu is undefined for a zero denominator quantity")
    mu_y, _ = expand(yk, basis)
    mu_d, _ = expand(delta, basis)
    return mu_y / mu_d
