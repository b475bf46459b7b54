"""Plain-text, LaTeX and structured (JSON) renderings of an analysis report."""

from __future__ import annotations

import json
import re
from typing import Optional

from .analysis import AnalysisReport
from .model import model_to_dict
from .pi import ClosedForm, PiGroup, PowerProduct, RepresentationEquation

__all__ = ["FORMATS", "SCHEMA_VERSION", "CAVEAT", "render", "self_check"]

FORMATS = ("text", "latex", "structured")
SCHEMA_VERSION = "1"
CAVEAT = (
    "assumes the relation admits a covariant scalar representation; "
    "this is not checked"
)


def self_check(report: AnalysisReport) -> None:
    """Re-verify ``W_k * dim(y_k) == sum W_kj * dim(x_j)`` for every row."""
    t = report.tuple
    for eq in report.system.equations:
        a = eq.partition.a_indices
        for row in eq.rows():
            lhs = t.dims[row.subject_index] * row.w0
            rhs = [0] * t.m
            for i, w in zip(a, row.wj):
                rhs = [s + w * d for s, d in zip(rhs, t.dims[i])]
            if list(lhs) != rhs:
                raise RuntimeError(
                    f"exponent row {row.as_tuple()} for {t.names[row.subject_index]} "
                    "fails the dimension identity"
                )


def render(report: AnalysisReport, fmt: str = "text", scalar: bool = False) -> str:
    self_check(report)
    if fmt == "text":
        return _render_text(report, scalar)
    if fmt == "latex":
        return _render_latex(report, scalar)
    if fmt == "structured":
        return _render_structured(report)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


# -- text --------------------------------------------------------------------

def _t_factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _t_pp(pp: PowerProduct) -> str:
    return " * ".join(_t_factor(n, e) for n, e in pp)


def pi_text(g: PiGroup, report: AnalysisReport, eq: RepresentationEquation) -> str:
    t = report.tuple
    num = _t_factor(t.names[g.subject_index], g.row.w0)
    den = g.denominator(t, eq.partition)
    if not den:
        return num
    d = _t_pp(den)
    return f"{num} / ({d})" if len(den) > 1 else f"{num} / {d}"


def _psi_name(label: str, scalar: bool) -> str:
    return label.replace("Psi", "psi") if scalar else label


def _t_equation(report: AnalysisReport, ell: int, scalar: bool) -> str:
    s, t = report.system, report.tuple
    eq = s.equations[ell]
    lam = s.lambda_for(ell)
    lhs = _t_factor(t.dependent, eq.lhs_row.w0 * lam)
    psi = f"{_psi_name(eq.psi_label, scalar)}({', '.join(pi_text(g, report, eq) for g in eq.pi_groups)})"
    if lam != 1:
        psi += f"^{lam}"
    pre = _t_pp(eq.prefactor(t, lam))
    return f"{lhs} = {pre + ' * ' if pre else ''}{psi}"


def _t_closed(cf: ClosedForm) -> str:
    lhs = _t_factor(cf.lhs, cf.lhs_power)
    pieces = [cf.constant]
    if cf.prefactor:
        pieces.append(_t_pp(cf.prefactor))
    total = f"({_t_pp(cf.terms[0]) or '1'} + {_t_pp(cf.terms[1]) or '1'})"
    if cf.outer_power != 1:
        total += f"^{cf.outer_power}"
    pieces.append(total)
    return f"{lhs} = {' * '.join(pieces)}"


def _render_text(report: AnalysisReport, scalar: bool) -> str:
    t, s = report.tuple, report.system
    others = [n for i, n in enumerate(t.names) if i != t.dependent_index]
    out = [
        f"dependent: {t.dependent}",
        f"variables: {', '.join(others) if others else '(none)'}",
        f"rank: {report.rank}",
        f"adequate partitions: {len(s.equations)}",
    ]
    if scalar:
        out.append("form: scalar (symbols are measures relative to any local basis)")
    if s.normalized:
        out.append(
            f"normalized: W_0 = {s.common_w0}, Lambda = ({', '.join(map(str, s.lambdas))})"
        )
    if s.diagnostic:
        out += ["", s.diagnostic]
    for ell, eq in enumerate(s.equations):
        a, b, c = eq.partition.names(t)
        out += [
            "",
            f"({ell + 1}) A = ({', '.join(a)}); B = ({', '.join(b)}); C = ({c})",
        ]
        width = max(len(t.names[r.subject_index]) for r in eq.rows())
        for row in eq.rows():
            cells = " ".join(f"{w:>3}" for w in row.wj)
            out.append(f"    W {t.names[row.subject_index]:<{width}} | {row.w0:>3} | {cells}".rstrip())
        out.append("    " + _t_equation(report, ell, scalar))
    if report.reduction_note is not None or report.closed_form is not None:
        out.append("")
        if report.model.symmetry:
            out.append(f"symmetry: {report.model.symmetry[0]} <-> {report.model.symmetry[1]}")
        if report.reduction_note:
            out.append(f"reduction: {report.reduction_note}")
        if report.closed_form is not None:
            out.append("closed form: " + _t_closed(report.closed_form))
    if s.equations:
        out += ["", f"note: {CAVEAT}"]
    return "\n".join(out) + "\n"


# -- latex -------------------------------------------------------------------

_CONTROL_WORD = re.compile(r"\\[A-Za-z]+\Z")


def _l_join(pieces) -> str:
    out = ""
    for p in pieces:
        if out and _CONTROL_WORD.search(out) and p[:1].isalpha():
            out += " "
        out += p
    return out


def _l_factor(disp: str, e: int) -> str:
    return disp if e == 1 else f"{disp}^{{{e}}}"


class _Latex:
    def __init__(self, report: AnalysisReport, scalar: bool):
        self.report = report
        self.scalar = scalar
        self.disp = report.model.displays()

    def name(self, n: str) -> str:
        return self.disp.get(n, n)

    def pp(self, pp: Optional[PowerProduct]) -> str:
        return _l_join(_l_factor(self.name(n), e) for n, e in pp or ())

    def psi(self, label: str) -> str:
        k = label.split("_", 1)[1]
        return f"\\{'psi' if self.scalar else 'Psi'}_{{{k}}}"

    def pi(self, g: PiGroup, eq: RepresentationEquation) -> str:
        t = self.report.tuple
        num = _l_factor(self.name(t.names[g.subject_index]), g.row.w0)
        den = g.denominator(t, eq.partition)
        if not den:
            return num
        d = self.pp(den)
        return f"{num}/({d})" if len(den) > 1 else f"{num}/{d}"

    def equation(self, ell: int) -> str:
        s, t = self.report.system, self.report.tuple
        eq = s.equations[ell]
        lam = s.lambda_for(ell)
        lhs = _l_factor(self.name(t.dependent), eq.lhs_row.w0 * lam)
        args = ", ".join(self.pi(g, eq) for g in eq.pi_groups)
        psi = f"{self.psi(eq.psi_label)}({args})"
        if lam != 1:
            psi += f"^{{{lam}}}"
        pre = self.pp(eq.prefactor(t, lam))
        return f"{lhs} = {pre + chr(92) + ',' if pre else ''}{psi}"

    def closed(self, cf: ClosedForm) -> str:
        lhs = _l_factor(self.name(cf.lhs), cf.lhs_power)
        total = f"({self.pp(cf.terms[0]) or '1'}+{self.pp(cf.terms[1]) or '1'})"
        if cf.outer_power != 1:
            total += f"^{{{cf.outer_power}}}"
        pre = self.pp(cf.prefactor)
        rhs = f"{cf.constant}\\,{pre}{total}" if pre else f"{cf.constant}{total}"
        return f"{lhs} = {rhs}"


def _render_latex(report: AnalysisReport, scalar: bool) -> str:
    lx = _Latex(report, scalar)
    s = report.system
    out = [f"% rank {report.rank}; {len(s.equations)} adequate partition(s)"]
    if s.normalized:
        out.append(f"% normalized: W_0 = {s.common_w0}")
    if s.diagnostic:
        out.append(f"% {s.diagnostic}")
    for ell in range(len(s.equations)):
        out.append(f"\\[ {lx.equation(ell)} \\tag{{{ell + 1}}} \\]")
    if report.reduction_note:
        out.append(f"% reduction: {report.reduction_note}")
    if report.closed_form is not None:
        out.append(f"\\[ {lx.closed(report.closed_form)} \\]")
    return "\n".join(out) + "\n"


# -- structured --------------------------------------------------------------

def _render_structured(report: AnalysisReport) -> str:
    t, s = report.tuple, report.system
    doc: dict = {"version": SCHEMA_VERSION, "model": model_to_dict(report.model), "rank": report.rank}
    if s.normalized:
        doc["common_w0"] = s.common_w0
    eqs = []
    for ell, eq in enumerate(s.equations):
        a, b, c = eq.partition.names(t)
        entry = {
            "partition": {"a": list(a), "b": list(b), "c": c},
            "lhs": {"w0": eq.lhs_row.w0, "exponents": dict(zip(a, eq.lhs_row.wj))},
            "pis": [
                {
                    "subject": t.names[g.subject_index],
                    "w": g.row.w0,
                    "exponents": dict(zip(a, g.row.wj)),
                }
                for g in eq.pi_groups
            ],
            "psi": eq.psi_label,
        }
        if s.normalized:
            entry["lambda"] = s.lambdas[ell]
        eqs.append(entry)
    doc["equations"] = eqs
    if s.diagnostic:
        doc["diagnostic"] = s.diagnostic
    if report.reduction_note:
        doc["reduction_note"] = report.reduction_note
    if report.closed_form is not None:
        doc["reduced"] = {
            "expression": _t_closed(report.closed_form),
            "constant": report.closed_form.constant,
        }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
