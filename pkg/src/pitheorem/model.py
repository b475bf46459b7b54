"""Analysis model documents.

A model file is line oriented::

    # pendulum
    [dimensions]
    L T M

    [variables]
    l = L            display=\\ell
    m = M
    theta = 1        display=\\theta
    g = L * T^-2
    t = T

    [dependent]
    t

    [symmetry]          # optional: two exchangeable variables
    [substitute]        # optional: new = power product of variables

Dimension expressions follow ``expr ::= '1' | term ('*' term)*`` with
``term ::= name ('^' signed-integer)?``; repeated names accumulate.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .partitions import DimTuple
from .quantity import DimVector

__all__ = [
    "ModelError",
    "Variable",
    "Substitution",
    "AnalysisModel",
    "parse_dim_expr",
    "parse_model",
    "parse_structured_model",
    "model_to_dict",
    "format_power_product",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\S+?))?\s*\Z")
_INT = re.compile(r"[+-]?\d+\Z")
_ATTR = re.compile(r"\s+display=(\S+)\s*\Z")
SECTIONS = ("dimensions", "variables", "dependent", "symmetry", "substitute")


class ModelError(ValueError):
    """Input error with an optional 1-based line/column location."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(loc + message)


@dataclass(frozen=True)
class Variable:
    name: str
    dim: DimVector
    display: Optional[str] = None


@dataclass(frozen=True)
class Substitution:
    name: str
    factors: tuple[tuple[str, int], ...]
    display: Optional[str] = None


@dataclass(frozen=True)
class AnalysisModel:
    base_dims: tuple[str, ...]
    variables: tuple[Variable, ...]
    dependent: str
    symmetry: Optional[tuple[str, str]] = None
    substitutions: tuple[Substitution, ...] = ()

    def __post_init__(self) -> None:
        _check_unique(self.base_dims, "base dimension")
        names = [v.name for v in self.variables]
        _check_unique(names, "variable")
        for v in self.variables:
            if len(v.dim) != len(self.base_dims):
                raise ModelError(f"variable {v.name!r} has the wrong number of exponents")
        if self.dependent not in names:
            raise ModelError(f"dependent variable {self.dependent!r} is not declared")
        all_names = set(names)
        for s in self.substitutions:
            if s.name in all_names:
                raise ModelError(f"duplicate variable {s.name!r}")
            all_names.add(s.name)
            for f, _ in s.factors:
                if f not in names:
                    raise ModelError(f"substitution {s.name!r} references unknown variable {f!r}")
                if f == self.dependent:
                    raise ModelError("the dependent variable cannot be substituted")
        if self.symmetry is not None:
            if len(self.symmetry) != 2 or self.symmetry[0] == self.symmetry[1]:
                raise ModelError("symmetry needs two distinct variable names")
            for name in self.symmetry:
                if name not in all_names:
                    raise ModelError(f"symmetry references unknown variable {name!r}")

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence[int]],
        names: Sequence[str],
        dependent: str,
        base_dims: Optional[Sequence[str]] = None,
    ) -> "AnalysisModel":
        """Build a model from a dimensional matrix (one column per variable)."""
        rows = [list(r) for r in matrix]
        if any(len(r) != len(names) for r in rows):
            raise ModelError("matrix column count does not match the variable names")
        if base_dims is None:
            base_dims = [f"E{i + 1}" for i in range(len(rows))]
        variables = tuple(
            Variable(n, DimVector(r[j] for r in rows)) for j, n in enumerate(names)
        )
        return cls(tuple(base_dims), variables, dependent)

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def with_dependent(self, name: str) -> "AnalysisModel":
        return replace(self, dependent=name)

    def displays(self) -> dict[str, str]:
        out = {v.name: v.display for v in self.variables if v.display}
        out.update({s.name: s.display for s in self.substitutions if s.display})
        return out

    def expansions(self) -> dict[str, tuple[tuple[str, int], ...]]:
        return {s.name: s.factors for s in self.substitutions}

    def dim_tuple(self) -> DimTuple:
        """Dimension tuple after applying substitutions.

        Variables referenced by a substitution are dropped; each new variable
        takes the slot of the earliest variable it replaces.
        """
        dims = {v.name: v.dim for v in self.variables}
        removed = {f for s in self.substitutions for f, _ in s.factors}
        order = [v.name for v in self.variables]
        anchor: dict[str, list[Substitution]] = {}
        for s in self.substitutions:
            first = min((f for f, _ in s.factors), key=order.index)
            anchor.setdefault(first, []).append(s)
        entries = []
        for v in self.variables:
            for s in anchor.get(v.name, ()):
                d = DimVector.identity(len(self.base_dims))
                for f, e in s.factors:
                    d = d + dims[f] * e
                entries.append((s.name, d))
            if v.name not in removed:
                entries.append((v.name, v.dim))
        return DimTuple.from_pairs(entries, self.dependent)


def _check_unique(items, what: str) -> None:
    seen = set()
    for x in items:
        if x in seen:
            raise ModelError(f"duplicate {what} {x!r}")
        seen.add(x)


def _parse_product(text: str, known: dict[str, int] | None, what: str,
                   line: Optional[int] = None, col0: int = 1) -> dict[str, int]:
    """Parse ``a^2 * b * c^-1`` into ordered name -> exponent."""
    if text.strip() == "1":
        return {}
    if not text.strip():
        raise ModelError("empty expression", line, col0)
    out: dict[str, int] = {}
    offset = 0
    for piece in text.split("*"):
        col = col0 + offset + (len(piece) - len(piece.lstrip()))
        offset += len(piece) + 1
        m = _TERM.match(piece)
        if not m:
            raise ModelError(f"malformed expression {piece.strip()!r}", line, col)
        name, exp = m.group(1), m.group(2)
        if known is not None and name not in known:
            raise ModelError(f"unknown {what} {name!r}", line, col)
        if exp is None:
            k = 1
        elif _INT.match(exp):
            k = int(exp)
        elif re.fullmatch(r"[+-]?(\d+\.\d*|\.\d+|\d+/\d+)", exp):
            raise ModelError(f"non-integer exponent {exp!r}", line, col)
        else:
            raise ModelError(f"malformed exponent {exp!r}", line, col)
        out[name] = out.get(name, 0) + k
    return out


def parse_dim_expr(text: str, base_dims: Sequence[str],
                   line: Optional[int] = None, col: int = 1) -> DimVector:
    """Parse a dimension expression such as ``L * T^-2`` over ``base_dims``."""
    idx = {b: i for i, b in enumerate(base_dims)}
    exps = [0] * len(base_dims)
    for name, k in _parse_product(text, idx, "base dimension", line, col).items():
        exps[idx[name]] += k
    return DimVector(exps)


def format_power_product(factors) -> str:
    if not factors:
        return "1"
    return " * ".join(n if e == 1 else f"{n}^{e}" for n, e in factors)


def parse_model(text: str, dependent: Optional[str] = None) -> AnalysisModel:
    """Parse a model document (sectioned text or a structured JSON report).

    ``dependent`` overrides the document's ``[dependent]`` section.
    """
    if text.lstrip().startswith("{"):
        model = parse_structured_model(text)
        return model.with_dependent(dependent) if dependent else model

    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = re.fullmatch(r"\s*\[\s*([A-Za-z_]+)\s*\]\s*", line)
        if header:
            current = header.group(1).lower()
            if current not in SECTIONS:
                raise ModelError(f"unknown section [{current}]", lineno, 1)
            if current in sections:
                raise ModelError(f"duplicate section [{current}]", lineno, 1)
            sections[current] = []
            continue
        if current is None:
            raise ModelError("content before the first section header", lineno, 1)
        sections[current].append((lineno, line))

    for required in ("dimensions", "variables"):
        if required not in sections:
            raise ModelError(f"missing [{required}] section")

    base_dims: list[str] = []
    for lineno, line in sections["dimensions"]:
        for m in re.finditer(r"[^\s,]+", line):
            name = m.group(0)
            if not _NAME.match(name):
                raise ModelError(f"invalid base dimension name {name!r}", lineno, m.start() + 1)
            if name in base_dims:
                raise ModelError(f"duplicate base dimension {name!r}", lineno, m.start() + 1)
            base_dims.append(name)

    variables: list[Variable] = []
    seen: set[str] = set()
    for lineno, line in sections["variables"]:
        name, expr, display, col = _split_assignment(line, lineno)
        if name in seen:
            raise ModelError(f"duplicate variable {name!r}", lineno, 1)
        seen.add(name)
        variables.append(Variable(name, parse_dim_expr(expr, base_dims, lineno, col), display))

    declared = _single_name(sections.get("dependent", []), "dependent")
    dependent = dependent or declared
    if dependent is None:
        raise ModelError("no dependent variable declared (add a [dependent] section or use --dependent)")
    if dependent not in seen:
        line = sections["dependent"][0][0] if dependent == declared else None
        raise ModelError(f"dependent variable {dependent!r} is not declared", line, 1 if line else None)

    symmetry = None
    if sections.get("symmetry"):
        lineno, line = sections["symmetry"][0]
        names = re.findall(r"[^\s,]+", line)
        if len(sections["symmetry"]) != 1 or len(names) != 2:
            raise ModelError("[symmetry] takes exactly two variable names", lineno, 1)
        symmetry = (names[0], names[1])

    subs = []
    for lineno, line in sections.get("substitute", []):
        name, expr, display, col = _split_assignment(line, lineno)
        if name in seen:
            raise ModelError(f"duplicate variable {name!r}", lineno, 1)
        seen.add(name)
        factors = _parse_product(expr, {v.name: 0 for v in variables}, "variable", lineno, col)
        subs.append(Substitution(name, tuple((k, v) for k, v in factors.items() if v), display))

    try:
        return AnalysisModel(tuple(base_dims), tuple(variables), dependent, symmetry, tuple(subs))
    except ModelError:
        raise
    except (KeyError, ValueError) as exc:
        raise ModelError(str(exc)) from exc


def _split_assignment(line: str, lineno: int) -> tuple[str, str, Optional[str], int]:
    if "=" not in line:
        raise ModelError("expected 'name = expression'", lineno, 1)
    display = None
    m = _ATTR.search(line)
    if m:
        display = m.group(1)
        line = line[: m.start()]
    lhs, rhs = line.split("=", 1)
    name = lhs.strip()
    if not _NAME.match(name):
        raise ModelError(f"invalid variable name {name!r}", lineno, 1)
    return name, rhs, display, len(lhs) + 2


def _single_name(entries, section: str) -> Optional[str]:
    if not entries:
        return None
    if len(entries) != 1:
        raise ModelError(f"[{section}] takes a single name", entries[1][0], 1)
    lineno, line = entries[0]
    name = line.strip()
    if not _NAME.match(name):
        raise ModelError(f"invalid name {name!r} in [{section}]", lineno, 1)
    return name


def model_to_dict(model: AnalysisModel) -> dict:
    """Serializable form, embedded in structured reports."""
    d: dict = {
        "dimensions": list(model.base_dims),
        "variables": [],
        "dependent": model.dependent,
    }
    for v in model.variables:
        entry = {"name": v.name, "dim": list(v.dim.exponents)}
        if v.display:
            entry["display"] = v.display
        d["variables"].append(entry)
    if model.symmetry:
        d["symmetry"] = list(model.symmetry)
    if model.substitutions:
        d["substitute"] = [
            {"name": s.name, "factors": [[f, e] for f, e in s.factors],
             **({"display": s.display} if s.display else {})}
            for s in model.substitutions
        ]
    return d


def parse_structured_model(text: str) -> AnalysisModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid structured document: {exc.msg}", exc.lineno, exc.colno) from exc
    m = doc.get("model", doc)
    try:
        variables = tuple(
            Variable(v["name"], DimVector(v["dim"]), v.get("display")) for v in m["variables"]
        )
        subs = tuple(
            Substitution(s["name"], tuple((f, int(e)) for f, e in s["factors"]), s.get("display"))
            for s in m.get("substitute", [])
        )
        sym = tuple(m["symmetry"]) if m.get("symmetry") else None
        return AnalysisModel(tuple(m["dimensions"]), variables, m["dependent"], sym, subs)
    except (KeyError, TypeError) as exc:
        raise ModelError(f"structured document is missing model field {exc}") from exc
