"""JSON input documents and analysis reports.

Input (one system)::

    {"label": "ladder", "energies": [e1, ..., eN],
     "coupling": [[[re, im], ...], ...],          # N x N, Hermitian
     "tolerances": {"root_eq": 1e-9, "edge": 1e-10, "rank": 1e-8}}

A report carries the analysed system under ``"system"`` in the same shape,
so feeding a report back in re-analyses exactly that system.
"""
from __future__ import annotations

import json
from dataclasses import replace

import numpy as np

from . import __version__
from .algebra import su_dimension
from .criteria import Verdict
from .errors import DimensionError, ParseError, ValidationError
from .system import ControlSystem, Tolerances

SCHEMA_VERSION = "1.0"
TOOL_NAME = "suncontrol"


def _complex_entry(value, where: str) -> complex:
    if isinstance(value, bool):
        raise ValidationError(f"{where} must be a number or an [re, im] pair")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(float(value[0]), float(value[1]))
    raise ValidationError(f"{where} must be a number or an [re, im] pair, got {value!r}")


def tolerances_from(doc: dict | None, base: Tolerances | None = None) -> Tolerances:
    tol = base or Tolerances()
    if not doc:
        return tol
    unknown = set(doc) - {"root_eq", "edge", "rank", "su"}
    if unknown:
        raise ValidationError(f"unknown tolerance field(s): {', '.join(sorted(unknown))}")
    vals = {}
    for key, v in doc.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
            raise ValidationError(f"tolerances.{key} must be a positive number")
        vals[key] = float(v)
    return replace(tol, **vals)


def system_from_document(doc, overrides: dict | None = None) -> ControlSystem:
    """Build a ControlSystem from a parsed input document or a prior report."""
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if "schema_version" in doc and "system" in doc:
        doc = doc["system"]
        if not isinstance(doc, dict):
            raise ParseError("report field 'system' must be an object")
    for key in ("energies", "coupling"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    energies = doc["energies"]
    if not isinstance(energies, list) or not all(
            isinstance(e, (int, float)) and not isinstance(e, bool) for e in energies):
        raise ValidationError("energies must be a list of numbers")
    n = len(energies)
    if n < 2:
        raise DimensionError(f"need at least 2 energy levels, got {n}")
    rows = doc["coupling"]
    if not isinstance(rows, list) or len(rows) != n:
        raise DimensionError(f"coupling must have {n} rows to match {n} energies")
    coupling = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DimensionError(f"coupling[{i}] must have {n} entries")
        for j, v in enumerate(row):
            coupling[i, j] = _complex_entry(v, f"coupling[{i}][{j}]")
    tol = tolerances_from(doc.get("tolerances"))
    if overrides:
        tol = replace(tol, **{k: v for k, v in overrides.items() if v is not None})
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ValidationError("label must be a string")
    return ControlSystem.from_hamiltonians(energies, coupling, tol, label)


def parse_document(text: str, overrides: dict | None = None) -> ControlSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return system_from_document(doc, overrides)


def system_document(sys: ControlSystem) -> dict:
    doc = {}
    if sys.label is not None:
        doc["label"] = sys.label
    doc["energies"] = [float(e) for e in sys.energies]
    doc["coupling"] = [[[float(z.real), float(z.imag)] for z in row] for row in sys.coupling]
    doc["tolerances"] = sys.tolerances.as_dict()
    return doc


def _pairs(table, positions) -> list[list[int]]:
    return [[i + 1, j + 1] for i, j in table.pairs(positions)]


def build_report(verdict: Verdict) -> dict:
    an = verdict.analysis
    sys, table, graph = an.sys, an.table, an.graph
    gamma = set(table.gamma_plus)
    rows = []
    for k, r in enumerate(table.roots):
        rows.append({
            "pair": [r.i + 1, r.j + 1],
            "touched": k in gamma,
            "drift": float(table.values_at_drift[k]),
            "B0": float(table.values_at_B0[k]),
            "D0": float(table.values_at_D0[k]),
        })
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "label": sys.label,
        "N": sys.n_levels,
        "decision": verdict.decision,
    }
    if verdict.upgraded_decision is not None:
        report["upgraded_decision"] = verdict.upgraded_decision
        report["upgrade_basis"] = verdict.upgrade_basis
    report["criteria"] = [r.as_dict() for r in verdict.results]
    report["roots"] = {
        "table": rows,
        "gamma_plus": _pairs(table, table.gamma_plus),
        "theta_plus_A": _pairs(table, table.theta_plus_A),
        "omega_plus_A": _pairs(table, table.omega_plus_A),
        "theta_plus_B": _pairs(table, table.theta_plus_B),
    }
    report["d"] = [float(x) for x in an.brackets.d]
    report["graph"] = {
        "edges": [[i + 1, j + 1] for i, j in sorted(graph.edges)],
        "components": [[k + 1 for k in c] for c in graph.components()],
        "edge_list": graph.edge_list_text(),
    }
    if verdict.oracle_dimension is None:
        report["oracle"] = None
    else:
        report["oracle"] = {
            "dimension": verdict.oracle_dimension,
            "full_dimension": su_dimension(sys.n_levels),
            "depth": verdict.oracle_depth,
        }
    report["tolerances"] = sys.tolerances.as_dict()
    report["level_order"] = [k + 1 for k in sys.level_order]
    report["system"] = system_document(sys)
    return report


def format_text(report: dict) -> str:
    lines = []
    head = f"{report['label']}: " if report.get("label") else ""
    lines.append(f"{head}N={report['N']}  decision={report['decision']}")
    if report.get("upgraded_decision"):
        lines.append(f"  -> {report['upgraded_decision']} ({report['upgrade_basis']})")
    for c in report["criteria"]:
        lines.append(f"  {c['id']:<18} {c['outcome']:<14} {c['witness']}")
        for s in c.get("sub", []):
            lines.append(f"    {s['id']:<16} {s['outcome']:<14} {s['witness']}")
    lines.append("  touched roots: " + (" ".join(f"({i},{j})" for i, j in report["roots"]["gamma_plus"]) or "none"))
    lines.append("  components: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in report["graph"]["components"]))
    if report.get("oracle"):
        o = report["oracle"]
        lines.append(f"  rank condition: dimension {o['dimension']} of {o['full_dimension']} (depth {o['depth']})")
    return "\n".join(lines)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2)
