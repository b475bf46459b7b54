"""End-to-end pipeline from a parsed model to an analysis report."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import AnalysisModel
from .partitions import AdequatePartition, DimTuple, adequate_partitions, tuple_rank
from .pi import (
    ClosedForm,
    EquationSystem,
    build_system,
    explain_symmetry_reduce,
    normalize_system,
)

__all__ = ["AnalysisReport", "run_analysis"]


@dataclass(frozen=True)
class AnalysisReport:
    model: AnalysisModel
    tuple: DimTuple
    rank: int
    partitions: tuple[AdequatePartition, ...]
    system: EquationSystem
    closed_form: Optional[ClosedForm] = None
    reduction_note: Optional[str] = None

    @property
    def diagnostic(self) -> Optional[str]:
        return self.system.diagnostic

    def w_matrices(self) -> list[list[tuple[int, ...]]]:
        """Per-partition matrices of distinguished rows (lhs row first)."""
        return [[row.as_tuple() for row in eq.rows()] for eq in self.system.equations]


def run_analysis(
    model: AnalysisModel,
    normalize: bool = False,
    reduce: bool = False,
    dependent: Optional[str] = None,
) -> AnalysisReport:
    """Partitions, representation equations and optional normalization/reduction."""
    if dependent is not None:
        model = model.with_dependent(dependent)
    t = model.dim_tuple()
    rank = tuple_rank(t)
    system = build_system(t)
    parts = tuple(eq.partition for eq in system.equations) or tuple(adequate_partitions(t))
    if normalize and system.equations:
        system = normalize_system(system)

    closed, note = None, None
    if reduce:
        if model.symmetry is None:
            note = "no symmetry declared; nothing to reduce"
        elif len(system.equations) != 2:
            note = f"symmetry reduction needs exactly two equations, found {len(system.equations)}"
        else:
            closed, note = explain_symmetry_reduce(system, model.symmetry)
            if closed is not None and model.substitutions:
                closed = closed.substitute(model.expansions())
    return AnalysisReport(model, t, rank, parts, system, closed, note)
