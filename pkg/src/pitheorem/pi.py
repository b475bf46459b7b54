"""Distinguished exponent tuples, pi groups and representation equations.

For an adequate partition ``(A, B, C)`` each variable ``y_k`` outside ``A``
has a unique primitive relation ``[y_k]^W_k = prod [x_j]^W_kj`` with
``W_k > 0``. These rows give the dimensionless groups
``pi_k = y_k^W_k / prod x_j^W_kj`` and the representation

    y_0^W_0 = prod x_j^W_0j * Psi(pi_1, ..., pi_{n-r})

one per partition. The unknown function ``Psi`` is never evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .exact import IntMatrix, exact_rank, primitive_normalize, solve_exact
from .partitions import AdequatePartition, DimTuple, adequate_partitions, is_independent
from .quantity import DimVector

__all__ = [
    "NO_PARTITION_DIAGNOSTIC",
    "PowerProduct",
    "ExponentRow",
    "PiGroup",
    "RepresentationEquation",
    "EquationSystem",
    "ClosedForm",
    "distinguished_exponents",
    "kappa_multiple_check",
    "build_representation",
    "build_system",
    "normalize_system",
    "symmetry_reduce",
    "explain_symmetry_reduce",
    "catalog_solution",
    "CATALOG",
]

NO_PARTITION_DIAGNOSTIC = (
    "no adequate partition: dependent variable's dimension is not spanned "
    "by the dimensions of the other variables"
)

# Ordered (name, exponent) pairs with nonzero exponents.
PowerProduct = tuple[tuple[str, int], ...]


def pp_from_dict(d: dict[str, int]) -> PowerProduct:
    return tuple((k, v) for k, v in d.items() if v != 0)


def pp_combine(*parts: tuple[PowerProduct, int]) -> PowerProduct:
    """Sum of ``k * pp`` in first-seen name order, zeros dropped."""
    acc: dict[str, int] = {}
    for pp, k in parts:
        for name, e in pp:
            acc[name] = acc.get(name, 0) + k * e
    return pp_from_dict(acc)


@dataclass(frozen=True)
class ExponentRow:
    w0: int
    wj: tuple[int, ...]
    subject_index: int = -1

    def __post_init__(self) -> None:
        if self.w0 <= 0:
            raise ValueError("leading exponent must be positive")

    def as_tuple(self) -> tuple[int, ...]:
        return (self.w0,) + self.wj


def distinguished_exponents(
    y: DimVector, basis_cols: Sequence[DimVector], subject_index: int = -1
) -> ExponentRow:
    """Unique primitive ``(W, W_1..W_r)`` with ``W*y == sum W_j*x_j`` and ``W > 0``."""
    basis_cols = list(basis_cols)
    m = len(y)
    if not is_independent(basis_cols):
        raise ValueError("basis columns are linearly dependent")
    a = IntMatrix.from_columns([c.exponents for c in basis_cols], rows=m)
    sol = solve_exact(a, y.exponents)
    if sol is None:
        raise ValueError(
            f"dimension {y.exponents} is not spanned by the basis columns; "
            "the partition is not adequate"
        )
    w0, wj = primitive_normalize(Fraction(1), sol)
    return ExponentRow(w0, wj, subject_index)


def kappa_multiple_check(row: ExponentRow, other: tuple[int, Sequence[int]]) -> bool:
    """True iff ``other`` is a positive integer multiple of ``row``."""
    w0, wj = other
    wj = tuple(wj)
    if len(wj) != len(row.wj):
        raise ValueError("exponent rows differ in length")
    if w0 <= 0 or w0 % row.w0:
        return False
    kappa = w0 // row.w0
    return all(b == kappa * a for a, b in zip(row.wj, wj))


@dataclass(frozen=True)
class PiGroup:
    subject_index: int
    row: ExponentRow
    name: str

    def exponents(self, t: DimTuple, p: AdequatePartition) -> PowerProduct:
        """The group as a power product over variable names."""
        d = {t.names[self.subject_index]: self.row.w0}
        for i, w in zip(p.a_indices, self.row.wj):
            d[t.names[i]] = d.get(t.names[i], 0) - w
        return pp_from_dict(d)

    def denominator(self, t: DimTuple, p: AdequatePartition) -> PowerProduct:
        return tuple((t.names[i], w) for i, w in zip(p.a_indices, self.row.wj) if w)


@dataclass(frozen=True)
class RepresentationEquation:
    partition: AdequatePartition
    lhs_row: ExponentRow
    pi_groups: tuple[PiGroup, ...]
    psi_label: str

    def prefactor(self, t: DimTuple, power: int = 1) -> PowerProduct:
        """``prod x_j^(power * W_0j)`` over the basis variables."""
        return tuple(
            (t.names[i], power * w) for i, w in zip(self.partition.a_indices, self.lhs_row.wj) if w
        )

    def rows(self) -> list[ExponentRow]:
        """The W matrix: lhs row first, then one row per pi group."""
        return [self.lhs_row] + [g.row for g in self.pi_groups]


@dataclass(frozen=True)
class EquationSystem:
    tuple: DimTuple
    equations: tuple[RepresentationEquation, ...]
    normalized: bool = False
    lambdas: Optional[tuple[int, ...]] = None
    common_w0: Optional[int] = None
    diagnostic: Optional[str] = None

    def __len__(self) -> int:
        return len(self.equations)

    def lambda_for(self, ell: int) -> int:
        return self.lambdas[ell] if self.normalized else 1


def build_representation(
    t: DimTuple, p: AdequatePartition, psi_label: str = "Psi_1"
) -> RepresentationEquation:
    basis = [t.dims[i] for i in p.a_indices]
    lhs = distinguished_exponents(t.dims[p.c_index], basis, p.c_index)
    groups = tuple(
        PiGroup(i, distinguished_exponents(t.dims[i], basis, i), f"pi_{k}")
        for k, i in enumerate(p.b_indices, start=1)
    )
    return RepresentationEquation(p, lhs, groups, psi_label)


def build_system(t: DimTuple) -> EquationSystem:
    parts = adequate_partitions(t)
    if not parts:
        return EquationSystem(t, (), diagnostic=NO_PARTITION_DIAGNOSTIC)
    eqs = tuple(build_representation(t, p, f"Psi_{ell}") for ell, p in enumerate(parts, start=1))
    return EquationSystem(t, eqs)


def normalize_system(s: EquationSystem) -> EquationSystem:
    """Raise each equation to ``lcm(W_(l)0) / W_(l)0`` so all share one lhs power."""
    if not s.equations:
        raise ValueError("cannot normalize an empty equation system")
    w = [eq.lhs_row.w0 for eq in s.equations]
    common = lcm(*w)
    return replace(
        s, normalized=True, lambdas=tuple(common // v for v in w), common_w0=common
    )


@dataclass(frozen=True)
class ClosedForm:
    """``lhs^lhs_power = k * prefactor * (term_1 + term_2)^outer_power``."""

    lhs: str
    lhs_power: int
    prefactor: PowerProduct
    terms: tuple[PowerProduct, PowerProduct]
    outer_power: int
    functional_power: int
    constant: str = "k"
    swap: tuple[str, str] = field(default=("", ""))

    def substitute(self, expansions: dict[str, PowerProduct]) -> "ClosedForm":
        """Rewrite names that stand for power products of other variables."""

        def sub(pp: PowerProduct) -> PowerProduct:
            parts = []
            for name, e in pp:
                parts.append((expansions.get(name, ((name, 1),)), e))
            return pp_combine(*parts)

        return replace(
            self, prefactor=sub(self.prefactor), terms=(sub(self.terms[0]), sub(self.terms[1]))
        )


def catalog_solution(p: int) -> Callable[[Fraction, Fraction], Fraction]:
    """Solution family ``Psi(x) = k (1 + x)^p`` of ``Psi(x) = x^p Psi(1/x)``."""
    if p not in CATALOG:
        raise KeyError(f"no catalogued solution for functional power {p}")
    return lambda x, k=Fraction(1): k * (1 + x) ** p


# functional-equation power -> outer power of (1 + x) in the solution
CATALOG = {1: 1, -1: -1}


def _swap_names(pp, a: str, b: str):
    m = {a: b, b: a}
    return tuple((m.get(n, n), e) for n, e in pp)


def explain_symmetry_reduce(
    s: EquationSystem, swap: tuple[str, str]
) -> tuple[Optional[ClosedForm], str]:
    """Like :func:`symmetry_reduce` but also returns a one-line reason."""
    a, b = swap
    t = s.tuple
    for name in (a, b):
        if name not in t.names:
            raise KeyError(f"swap variable {name!r} is not in the dimension tuple")
    if a == b:
        raise ValueError("swap needs two distinct variables")
    if len(s.equations) != 2:
        raise ValueError(f"symmetry reduction needs exactly two equations, got {len(s.equations)}")
    eq1, eq2 = s.equations
    if len(eq1.pi_groups) != 1:
        return None, "only single-argument functional equations are catalogued"
    if eq1.lhs_row.w0 != eq2.lhs_row.w0:
        return None, "equations differ in lhs exponent; not swap-symmetric"

    x1, x2 = eq1.prefactor(t), eq2.prefactor(t)
    pi1 = eq1.pi_groups[0].exponents(t, eq1.partition)
    pi2 = eq2.pi_groups[0].exponents(t, eq2.partition)
    if dict(_swap_names(x1, a, b)) != dict(x2) or dict(_swap_names(pi1, a, b)) != dict(pi2):
        return None, f"system is not symmetric under exchanging {a} and {b}"

    # x1 * Psi(pi1) = x2 * Psi(1/pi1)  =>  Psi(x) = (x2/x1) Psi(1/x), need x2/x1 = pi1^p
    ratio = dict(pp_combine((x2, 1), (x1, -1)))
    pi = dict(pi1)
    if set(ratio) - set(pi):
        return None, "prefactor ratio is not a power of the pi group"
    name0 = next(iter(pi))
    p = Fraction(ratio.get(name0, 0), pi[name0])
    if p.denominator != 1 or any(ratio.get(n, 0) != p * e for n, e in pi.items()):
        return None, "prefactor ratio is not an integer power of the pi group"
    p = int(p)
    if p not in CATALOG:
        return None, f"functional equation Psi(x) = x^{p} Psi(1/x) is not in the catalog"

    outer = CATALOG[p]
    # k * x1 * (1 + pi)^outer == k * C^outer * (T1 + T2)^outer with T_i = x_i^outer / C
    t1 = pp_combine((x1, outer))
    t2 = pp_combine((x2, outer))
    names = list(dict.fromkeys([n for n, _ in t1] + [n for n, _ in t2]))
    d1, d2 = dict(t1), dict(t2)
    common = pp_from_dict({n: min(d1.get(n, 0), d2.get(n, 0)) for n in names})
    term1 = pp_combine((t1, 1), (common, -1))
    term2 = pp_combine((t2, 1), (common, -1))
    prefactor = pp_combine((common, outer))
    cf = ClosedForm(
        lhs=t.dependent,
        lhs_power=eq1.lhs_row.w0,
        prefactor=prefactor,
        terms=(term1, term2),
        outer_power=outer,
        functional_power=p,
        swap=(a, b),
    )
    return cf, f"Psi(x) = x^{p} Psi(x^-1) solved by Psi(x) = k (1 + x)^{outer}"


def symmetry_reduce(s: EquationSystem, swap: tuple[str, str]) -> Optional[ClosedForm]:
    """Closed form from a declared swap symmetry, or ``None`` if uncatalogued."""
    return explain_symmetry_reduce(s, swap)[0]
