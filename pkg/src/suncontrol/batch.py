"""Criteria-versus-rank-condition agreement over random systems."""
from __future__ import annotations

import json
import time
from collections import Counter

from .criteria import NEC_CONNECTED, SUFFICIENT, evaluate
from .documents import build_report, system_document
from .errors import ClosureNotConverged, OracleContradiction
from .generators import parse_gen_spec, system_rngs, with_tolerances
from .oracle import lie_closure


def run_batch(gen_spec: str, n_levels: int, count: int, seed: int = 0, with_oracle: bool = True,
              tolerances=None, jsonl=None, backend: str | None = None, max_dump: int = 20) -> dict:
    """Evaluate ``count`` random systems and tabulate criteria against the oracle.

    ``jsonl`` (an open text stream) receives one report per system.  Systems
    where a criterion contradicts the rank condition are counted as
    violations instead of aborting the run.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    make = parse_gen_spec(gen_spec)
    fired = Counter()
    decisions = Counter()
    violations = []
    deficient = []
    nonconverged = 0
    full_count = 0
    t0 = time.perf_counter()
    for idx, rng in enumerate(system_rngs(seed, count)):
        sys = make(n_levels, rng)
        if tolerances is not None:
            sys = with_tolerances(sys, tolerances)
        verdict = evaluate(sys)
        oracle_key = "not_run"
        dim = None
        if with_oracle:
            try:
                closure = lie_closure(sys, backend=backend)
            except ClosureNotConverged as exc:
                nonconverged += 1
                dim = exc.dimension
                oracle_key = "not_converged"
            else:
                dim = closure.dimension
                oracle_key = "full" if closure.is_full else "deficient"
            if oracle_key == "full":
                full_count += 1
            elif len(deficient) < max_dump:
                deficient.append({"index": idx, "dimension": dim, "system": system_document(sys)})
            bad = [r.id for r in verdict.results if r.fired and r.id in SUFFICIENT and oracle_key != "full"]
            if verdict.results[0].fired and oracle_key == "full":
                bad.append(NEC_CONNECTED)
            if bad:
                violations.append({"index": idx, "criteria": bad, "dimension": dim,
                                   "system": system_document(sys)})
        for r in verdict.results:
            if r.fired:
                fired[(r.id, oracle_key)] += 1
        decisions[(verdict.decision, oracle_key)] += 1
        if jsonl is not None:
            rep = build_report(verdict)
            rep["index"] = idx
            if with_oracle:
                rep["oracle"] = {"dimension": dim, "full_dimension": n_levels * n_levels - 1,
                                 "status": oracle_key}
            jsonl.write(json.dumps(rep) + "\n")
    elapsed = time.perf_counter() - t0
    return {
        "generator": gen_spec,
        "N": n_levels,
        "count": count,
        "seed": seed,
        "oracle": with_oracle,
        "fired": {f"{cid}|{ok}": n for (cid, ok), n in sorted(fired.items())},
        "decisions": {f"{d}|{ok}": n for (d, ok), n in sorted(decisions.items())},
        "full_fraction": full_count / count if with_oracle else None,
        "violations": violations,
        "nonconverged": nonconverged,
        "deficient_examples": deficient,
        "elapsed_sec": elapsed,
    }


def format_summary(summary: dict) -> str:
    lines = [f"generator={summary['generator']} N={summary['N']} count={summary['count']} seed={summary['seed']}"]
    lines.append("criterion fired x oracle:")
    for key, n in summary["fired"].items():
        cid, ok = key.split("|")
        lines.append(f"  {cid:<18} {ok:<14} {n}")
    lines.append("decision x oracle:")
    for key, n in summary["decisions"].items():
        d, ok = key.split("|")
        lines.append(f"  {d:<18} {ok:<14} {n}")
    if summary["oracle"]:
        lines.append(f"full rank fraction: {summary['full_fraction']:.4f}")
        lines.append(f"violations: {len(summary['violations'])}")
    lines.append(f"elapsed: {summary['elapsed_sec']:.2f}s")
    return "\n".join(lines)


def check_violations(summary: dict) -> None:
    if summary["violations"]:
        v = summary["violations"][0]
        raise OracleContradiction(
            f"{len(summary['violations'])} system(s) contradict the rank condition; first: index {v['index']} "
            f"({', '.join(v['criteria'])}, dimension {v['dimension']})")
