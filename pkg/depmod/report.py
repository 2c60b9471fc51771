"""
📊 JSON analysis report.

Rationals are written as exact strings ("57/20") next to a *_decimal field
rounded to six places. Key order is fixed by construction, so the same
analysis always serializes to the same bytes.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, List, Optional

import jsonschema

from .community import SuggestionReport
from .errors import EmptyGraph, ReportSchemaError
from .graph import DependencyGraph
from .metrics import COUNT_CLASSES, modularity_directed, modularity_undirected, package_report, to_decimal
from .moves import ContributionTerm, MoveEvaluation
from .nullmodel import ValidationSummary
from .sdp import RemarkFinding, SdpViolation, check_sdp

logger = logging.getLogger("depmod.report")

SCHEMA_RESOURCE = "schemas/report.schema.json"


def _rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _decimal(value: Optional[Fraction]) -> Optional[float]:
    return None if value is None else to_decimal(value)


def _term(term: ContributionTerm) -> dict:
    return {"k_out": term.k_out, "k_in": term.k_in, "present": term.present}


def _violation(finding: SdpViolation) -> dict:
    return {
        "src": finding.src,
        "dst": finding.dst,
        "src_package": finding.src_package,
        "dst_package": finding.dst_package,
        "src_instability": finding.src_instability.as_json(),
        "dst_instability": finding.dst_instability.as_json(),
        "severity": finding.severity.value,
        "detected_by": finding.detected_by,
    }


def _remark(finding: RemarkFinding) -> dict:
    c = finding.condition
    return {
        "src": finding.src,
        "dst": finding.dst,
        "degrees": {"src_out": c.i_out, "src_in": c.i_in, "dst_out": c.j_out, "dst_in": c.j_in},
        "verdict": c.verdict.value,
        "detected_by": finding.detected_by,
    }


def evaluation_entry(evaluation: MoveEvaluation) -> dict:
    move = evaluation.move
    return {
        "class": move.node,
        "from": move.from_pkg,
        "to": move.to_pkg,
        "q_before": _rational(evaluation.q_before),
        "q_before_decimal": _decimal(evaluation.q_before),
        "q_after": _rational(evaluation.q_after),
        "q_after_decimal": _decimal(evaluation.q_after),
        "delta_q": _rational(evaluation.delta_q),
        "delta_q_decimal": _decimal(evaluation.delta_q),
        "delta_q_paper": _rational(evaluation.delta_q_paper),
        "delta_q_paper_decimal": _decimal(evaluation.delta_q_paper),
        "violations_suppressed": evaluation.violations_suppressed,
        "gained": [_term(t) for t in evaluation.gained],
        "lost": [_term(t) for t in evaluation.lost],
    }


def suggestion_section(report: SuggestionReport, communities, max_moves: Optional[int] = None) -> dict:
    evaluations = report.evaluations if max_moves is None else report.evaluations[:max_moves]
    return {
        "initial_q": _rational(report.initial_q),
        "final_q": _rational(report.final_q),
        "final_q_decimal": _decimal(report.final_q),
        "communities": [list(members) for members in communities],
        "merges": [
            {"kept": m.kept, "absorbed": m.absorbed, "delta_q": _rational(m.delta_q)}
            for m in report.merges
        ],
        "total_moves": len(report.evaluations),
        "moves": [evaluation_entry(e) for e in evaluations],
    }


def validation_entry(summary: ValidationSummary) -> dict:
    return {
        "kind": summary.kind,
        "trials": summary.trials,
        "successes": summary.successes,
        "failures": summary.failures,
        "seed": summary.seed,
        "samples": summary.samples,
        "max_abs_error": _rational(summary.max_abs_error),
        "max_abs_error_decimal": _decimal(summary.max_abs_error),
        "min_margin": _rational(summary.min_margin),
        "min_margin_decimal": _decimal(summary.min_margin),
        "saturated_pairs": sum(1 for row in summary.table if row.saturated),
    }


def _modularity(graph: DependencyGraph) -> Optional[dict]:
    try:
        directed = modularity_directed(graph).value
        undirected = modularity_undirected(graph).value
    except EmptyGraph:
        return None
    return {
        "directed": _rational(directed),
        "directed_decimal": _decimal(directed),
        "undirected": _rational(undirected),
        "undirected_decimal": _decimal(undirected),
    }


def build_report(
    graph: Optional[DependencyGraph] = None,
    count: str = COUNT_CLASSES,
    remarks: Optional[Iterable[RemarkFinding]] = None,
    evaluations: Optional[Iterable[MoveEvaluation]] = None,
    suggestions: Optional[dict] = None,
    validation: Optional[Iterable[ValidationSummary]] = None,
) -> dict:
    """Assemble the report dictionary; optional sections appear only when given."""
    report = {"packages": [], "violations": [], "modularity": None}
    if graph is not None:
        report["packages"] = [
            {
                "name": pm.package,
                "ca": pm.ca,
                "ce": pm.ce,
                "instability": pm.instability.as_json(),
                "instability_decimal": _decimal(pm.instability.value),
                "border_nodes": list(pm.border_nodes),
            }
            for pm in package_report(graph, count)
        ]
        report["violations"] = [_violation(f) for f in check_sdp(graph, count)]
        report["modularity"] = _modularity(graph)
    if remarks is not None:
        report["remarks"] = [_remark(f) for f in remarks]
    if evaluations is not None:
        report["evaluations"] = [evaluation_entry(e) for e in evaluations]
    if suggestions is not None:
        report["suggestions"] = suggestions
    if validation is not None:
        report["validation"] = [validation_entry(s) for s in validation]
    return report


@lru_cache(maxsize=1)
def load_schema() -> dict:
    text = resources.files("depmod").joinpath(SCHEMA_RESOURCE).read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(report: dict) -> dict:
    validator = jsonschema.Draft7Validator(load_schema())
    errors: List[jsonschema.ValidationError] = sorted(validator.iter_errors(report), key=lambda e: [str(p) for p in e.path])
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.path) or "<root>"
        raise ReportSchemaError(f"report does not match schema at {where}: {first.message}")
    return report


def emit_report(report: dict, validate: bool = True) -> str:
    if validate:
        validate_report(report)
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
