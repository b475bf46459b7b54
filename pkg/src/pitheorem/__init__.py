"""Exact dimensional analysis with adequate partitions and pi-theorem representations."""

from importlib import resources

__version__ = "0.1.0"

from .exact import IntMatrix, exact_rank, primitive_normalize, solve_exact
from .quantity import (
    DimVector,
    ExpansionError,
    FractionalExponentError,
    LocalBasis,
    NotInSpanError,
    Quantity,
    ZeroQuantityError,
    expand,
    nu,
    q_inv,
    q_mul,
    q_pow,
    unit,
)
from .partitions import (
    AdequatePartition,
    DimTuple,
    adequate_partitions,
    is_independent,
    maximal_independent_subtuples,
    tuple_rank,
)
from .pi import (
    ClosedForm,
    EquationSystem,
    ExponentRow,
    PiGroup,
    RepresentationEquation,
    build_representation,
    build_system,
    catalog_solution,
    distinguished_exponents,
    kappa_multiple_check,
    normalize_system,
    symmetry_reduce,
)
from .model import AnalysisModel, ModelError, parse_model
from .analysis import AnalysisReport, run_analysis
from .render import render
from .estimator import PiGroupTransformer


def example_names() -> list[str]:
    """Names of the bundled example models."""
    return sorted(
        p.name[:-4] for p in resources.files(__name__).joinpath("corpus").iterdir()
        if p.name.endswith(".dim")
    )


def example_text(name: str) -> str:
    return resources.files(__name__).joinpath("corpus", f"{name}.dim").read_text(encoding="utf-8")


def load_example(name: str) -> AnalysisModel:
    """Parse one of the bundled example models, e.g. ``load_example("pendulum")``."""
    return parse_model(example_text(name))
