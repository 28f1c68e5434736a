"""Root-space sufficient conditions for controllability, plus the necessity test.

Every criterion is evaluated on every system, in a fixed order, so reports
show which conditions cover which regime.  ``evaluate`` combines them:

* UNCONTROLLABLE when the transition graph of B is disconnected,
* CONTROLLABLE when any sufficient condition fires,
* INCONCLUSIVE otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import su_dimension
from .brackets import DerivedBrackets, derive_brackets
from .errors import OracleContradiction
from .graph import TransitionGraph, build_graph, fundamental_coverage, is_connected
from .oracle import lie_closure
from .roots import RootTable, b0_coefficients, find_collision, is_regular

FIRES = "fires"
DOES_NOT_FIRE = "does_not_fire"
INAPPLICABLE = "inapplicable"

CONTROLLABLE = "CONTROLLABLE"
UNCONTROLLABLE = "UNCONTROLLABLE"
INCONCLUSIVE = "INCONCLUSIVE"

NEC_CONNECTED = "NEC_CONNECTED"
THM1_REGULAR = "THM1_REGULAR"
THM2_BREGULAR = "THM2_BREGULAR"
THM3_BR_CONNECTED = "THM3_BR_CONNECTED"
COR2_FUND_REGULAR = "COR2_FUND_REGULAR"
THM4_B0 = "THM4_B0"
THM5_UNION = "THM5_UNION"
THM6_D0 = "THM6_D0"

SUFFICIENT = (THM1_REGULAR, THM2_BREGULAR, THM3_BR_CONNECTED, THM4_B0, THM5_UNION, THM6_D0)

RANK_UPGRADE_NOTE = "by rank condition, not by a controllability criterion"


@dataclass(frozen=True)
class CriterionResult:
    id: str
    outcome: str
    witness: str
    sub: tuple = ()

    @property
    def fired(self) -> bool:
        return self.outcome == FIRES

    def as_dict(self) -> dict:
        out = {"id": self.id, "outcome": self.outcome, "witness": self.witness}
        if self.sub:
            out["sub"] = [s.as_dict() for s in self.sub]
        return out


@dataclass(frozen=True)
class Verdict:
    decision: str
    results: tuple[CriterionResult, ...]
    oracle_dimension: int | None = None
    oracle_depth: int | None = None
    upgraded_decision: str | None = None
    upgrade_basis: str | None = None
    analysis: "Analysis | None" = field(default=None, repr=False)

    @property
    def fired(self) -> list[CriterionResult]:
        return [r for r in self.results if r.fired]

    def result(self, cid: str) -> CriterionResult:
        for r in self.results:
            if r.id == cid:
                return r
        raise KeyError(cid)


@dataclass(frozen=True)
class Analysis:
    """Everything the criteria look at, computed once per system."""

    sys: object
    graph: TransitionGraph
    brackets: DerivedBrackets

    @property
    def table(self) -> RootTable:
        return self.brackets.table

    @property
    def connected(self) -> bool:
        return is_connected(self.graph)


def analyze_system(sys) -> Analysis:
    return Analysis(sys, build_graph(sys.B, sys.edge_threshold), derive_brackets(sys))


def _levels(nodes) -> str:
    return "{" + ",".join(str(k + 1) for k in nodes) + "}"


def _pair(p) -> str:
    return f"({p[0] + 1},{p[1] + 1})"


def _describe_collision(table: RootTable, positions, values, tol) -> str:
    hit = find_collision(values[list(positions)], tol)
    if hit is None:
        return ""
    if hit[0] == "zero":
        p = table.pairs([positions[hit[1]]])[0]
        return f"root {_pair(p)} vanishes"
    p, q = table.pairs([positions[hit[1]], positions[hit[2]]])
    return f"roots {_pair(p)} and {_pair(q)} share the value {abs(values[positions[hit[1]]]):.6g}"


def _graph_connected(n: int, pairs) -> tuple[bool, list[list[int]]]:
    comps = TransitionGraph.from_edges(n, pairs).components()
    return len(comps) == 1, comps


def _nondegenerate_hypotheses(an: Analysis, cid: str) -> CriterionResult | None:
    if an.sys.is_degenerate:
        return CriterionResult(cid, INAPPLICABLE, "spectrum is degenerate (two equal energy levels)")
    if not an.connected:
        return CriterionResult(cid, INAPPLICABLE, "transition graph of B is disconnected")
    return None


def check_necessary(an: Analysis) -> CriterionResult:
    comps = an.graph.components()
    if len(comps) > 1:
        return CriterionResult(NEC_CONNECTED, FIRES,
                               "components " + " ".join(_levels(c) for c in comps))
    return CriterionResult(NEC_CONNECTED, DOES_NOT_FIRE, "transition graph of B is connected")


def thm_regular(an: Analysis) -> CriterionResult:
    if not an.connected:
        return CriterionResult(THM1_REGULAR, DOES_NOT_FIRE, "transition graph of B is disconnected")
    t = an.table
    allpos = list(range(len(t.roots)))
    why = _describe_collision(t, allpos, t.values_at_drift, t.drift_tol)
    if why:
        return CriterionResult(THM1_REGULAR, DOES_NOT_FIRE, f"drift not regular: {why}")
    return CriterionResult(THM1_REGULAR, FIRES, "all transition frequencies nonzero and distinct")


def thm_b_regular(an: Analysis) -> CriterionResult:
    if not an.connected:
        return CriterionResult(THM2_BREGULAR, DOES_NOT_FIRE, "transition graph of B is disconnected")
    t = an.table
    why = _describe_collision(t, list(t.gamma_plus), t.values_at_drift, t.drift_tol)
    if why:
        return CriterionResult(THM2_BREGULAR, DOES_NOT_FIRE, f"drift not B-regular: {why}")
    return CriterionResult(THM2_BREGULAR, FIRES, "touched transition frequencies nonzero and distinct")


def thm_br_connected(an: Analysis) -> CriterionResult:
    t = an.table
    n = t.n_levels
    theta = t.pairs(t.theta_plus_A)
    fund = fundamental_coverage(theta, n)
    cor = CriterionResult(COR2_FUND_REGULAR, FIRES if (fund and an.connected) else DOES_NOT_FIRE,
                          "all nearest-neighbour roots are regular and touched" if fund
                          else "some nearest-neighbour root is untouched or degenerate")
    if not an.connected:
        return CriterionResult(THM3_BR_CONNECTED, DOES_NOT_FIRE, "transition graph of B is disconnected", (cor,))
    ok, comps = _graph_connected(n, theta)
    if ok:
        return CriterionResult(THM3_BR_CONNECTED, FIRES,
                               "regular part of B connects all levels via " + " ".join(_pair(p) for p in theta),
                               (cor,))
    return CriterionResult(THM3_BR_CONNECTED, DOES_NOT_FIRE,
                           "regular part of B splits into " + " ".join(_levels(c) for c in comps), (cor,))


def _diag_regularity(t: RootTable, values, tol, gamma_c) -> tuple[bool, str]:
    """(fires, witness) for regular over all roots, else over Gamma+, else Gamma+_C."""
    allpos = list(range(len(t.roots)))
    checks = [("regular", allpos), ("B-regular", list(t.gamma_plus)), ("C-regular", gamma_c)]
    reasons = []
    for name, pos in checks:
        if not pos:
            reasons.append(f"{name}: no roots")
            continue
        why = _describe_collision(t, pos, values, tol)
        if not why:
            return True, name
        reasons.append(f"{name}: {why}")
    return False, "; ".join(reasons)


def gamma_c(t: RootTable) -> list[int]:
    """Roots of Gamma+ that survive in C = [A, B] (nonzero drift value)."""
    return [k for k in t.gamma_plus if abs(t.values_at_drift[k]) > t.drift_tol]


def thm_singular_b0(an: Analysis) -> CriterionResult:
    skip = _nondegenerate_hypotheses(an, THM4_B0)
    if skip:
        return skip
    t = an.table
    beta = b0_coefficients(an.sys)
    pair = np.vstack([an.sys.energies, beta])
    sv = np.linalg.svd(pair, compute_uv=False)
    if sv[1] <= t.b0_tol * max(1.0, sv[0]):
        why = "B0 vanishes" if np.max(np.abs(beta)) <= t.b0_tol else "B0 is proportional to the drift"
        return CriterionResult(THM4_B0, DOES_NOT_FIRE, why)
    allpos = list(range(len(t.roots)))
    why = _describe_collision(t, allpos, t.values_at_B0, t.b0_tol)
    if not why:
        return CriterionResult(THM4_B0, FIRES, "B0 is regular")
    gc = gamma_c(t)
    why_c = _describe_collision(t, gc, t.values_at_B0, t.b0_tol) if gc else "no roots"
    if not why_c:
        return CriterionResult(THM4_B0, FIRES, "B0 is C-regular")
    return CriterionResult(THM4_B0, DOES_NOT_FIRE, f"B0 not regular: {why}; not C-regular: {why_c}")


def union_connected(n_levels: int, theta_a_pairs, theta_b_pairs) -> tuple[bool, list[list[int]]]:
    return _graph_connected(n_levels, list(theta_a_pairs) + list(theta_b_pairs))


def thm_singular_union(an: Analysis) -> CriterionResult:
    skip = _nondegenerate_hypotheses(an, THM5_UNION)
    if skip:
        return skip
    t = an.table
    ok, comps = union_connected(t.n_levels, t.pairs(t.theta_plus_A), t.pairs(t.theta_plus_B))
    if ok:
        return CriterionResult(THM5_UNION, FIRES, "regular parts of B and C connect all levels")
    return CriterionResult(THM5_UNION, DOES_NOT_FIRE,
                           "union of regular parts splits into " + " ".join(_levels(c) for c in comps))


def thm_singular_d0(an: Analysis) -> CriterionResult:
    skip = _nondegenerate_hypotheses(an, THM6_D0)
    if skip:
        return skip
    t = an.table
    if np.max(np.abs(an.brackets.d)) <= t.d0_tol:
        return CriterionResult(THM6_D0, DOES_NOT_FIRE, "D0 vanishes")
    ok, why = _diag_regularity(t, t.values_at_D0, t.d0_tol, gamma_c(t))
    if ok:
        return CriterionResult(THM6_D0, FIRES, f"D0 is {why}")
    return CriterionResult(THM6_D0, DOES_NOT_FIRE, why)


CHECKS = (check_necessary, thm_regular, thm_b_regular, thm_br_connected,
          thm_singular_b0, thm_singular_union, thm_singular_d0)


def evaluate(sys, with_oracle: bool = False, backend: str | None = None) -> Verdict:
    an = analyze_system(sys)
    results = tuple(check(an) for check in CHECKS)
    necessity = results[0]
    if necessity.fired:
        decision = UNCONTROLLABLE
    elif any(r.fired for r in results if r.id in SUFFICIENT):
        decision = CONTROLLABLE
    else:
        decision = INCONCLUSIVE
    if not with_oracle:
        return Verdict(decision, results, analysis=an)
    closure = lie_closure(sys, backend=backend)
    full = closure.dimension == su_dimension(sys.n_levels)
    fired = [r.id for r in results if r.fired and r.id in SUFFICIENT]
    if fired and not full:
        raise OracleContradiction(
            f"{', '.join(fired)} fired but the generated algebra has dimension {closure.dimension}")
    if necessity.fired and full:
        raise OracleContradiction("graph of B is disconnected but the rank condition holds")
    upgraded = basis = None
    if decision == INCONCLUSIVE:
        upgraded = CONTROLLABLE if full else UNCONTROLLABLE
        basis = RANK_UPGRADE_NOTE
    return Verdict(decision, results, closure.dimension, closure.depth, upgraded, basis, an)
