"""
📚 Golden walkthrough: moving class 1 from C2 to C1 under two edge layouts.

Condition (a) keeps the Stable Dependencies Principle; in condition (b)
the dependency 1 -> 5 breaks it. Moving class 1 into C1 hides that
dependency inside a package, and the worked-example arithmetic rewards
the move more (57/20) than the same move in the well-layered graph (33/20).

Every number printed here is recomputed from the embedded fixtures and
checked against the frozen golden values; any deviation raises
InvariantViolation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import DepModError, InvariantViolation
from .formats import parse_deps
from .metrics import render_rational
from .moves import ContributionTerm, Move, MoveEvaluation, delta_q_paper_convention, evaluate_move
from .sdp import Severity, check_sdp

logger = logging.getLogger("depmod.example")

_NODES = """\
node 1 C2
node 2 C2
node 3 C2
node 4 C2
node 5 C1
node 6 C1
node 7 C1
node 8 C1
"""

FIXTURES: Dict[str, str] = {
    "a": _NODES
    + """\
edge 1 3
edge 3 4
edge 4 2
edge 5 1
edge 5 6
edge 5 7
edge 5 8
edge 6 1
edge 7 1
edge 8 1
""",
    "b": _NODES
    + """\
edge 1 3
edge 1 5
edge 2 3
edge 4 3
edge 5 3
edge 5 6
edge 5 7
edge 6 1
edge 7 1
edge 8 1
""",
}

MOVE = Move("1", "C2", "C1")

GOLDEN_WORKED_DELTA = {"a": Fraction(33, 20), "b": Fraction(57, 20)}
GOLDEN_DIRECTED_DELTA = {"a": Fraction(1, 10), "b": Fraction(1, 5)}
GOLDEN_VIOLATIONS = {"a": 0, "b": 1}

# Published term lists: (k_out, k_in, present)
PUBLISHED_TERMS: Dict[str, Tuple[List[Tuple[int, int, int]], List[Tuple[int, int, int]]]] = {
    "a": ([(4, 4, 1), (1, 4, 1), (1, 4, 1), (1, 4, 1)], [(1, 1, 1)]),
    "b": ([(1, 1, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1)], [(1, 1, 1)]),
}

TITLES = {
    "a": "Condition (a): dependencies follow the Stable Dependencies Principle",
    "b": "Condition (b): dependency 1 -> 5 violates the Stable Dependencies Principle",
}


@dataclass(frozen=True)
class ConditionResult:
    name: str
    evaluation: MoveEvaluation
    published_delta: Fraction
    violations: int


def _terms(raw) -> List[ContributionTerm]:
    return [ContributionTerm(*t) for t in raw]


def _render_terms(terms) -> str:
    if not terms:
        return "(none)"
    return ", ".join(f"1 - {t.k_out}x{t.k_in}/2m" if t.present else f"-{t.k_out}x{t.k_in}/2m" for t in terms)


def _check(condition: str, what: str, got, expected):
    if got != expected:
        raise InvariantViolation(f"condition ({condition}) {what}: expected {expected}, got {got}")


def evaluate_condition(name: str, text: str) -> ConditionResult:
    graph = parse_deps(text)
    evaluation = evaluate_move(graph, MOVE)
    gained, lost = PUBLISHED_TERMS[name]
    published = delta_q_paper_convention(_terms(gained), _terms(lost), graph.m)
    violations = sum(1 for f in check_sdp(graph) if f.severity is Severity.VIOLATION)

    _check(name, "edge count", graph.m, 10)
    _check(name, "worked-example delta", evaluation.delta_q_paper, GOLDEN_WORKED_DELTA[name])
    _check(name, "published-term delta", published, GOLDEN_WORKED_DELTA[name])
    _check(name, "directed modularity delta", evaluation.delta_q, GOLDEN_DIRECTED_DELTA[name])
    _check(name, "SDP violations", violations, GOLDEN_VIOLATIONS[name])
    return ConditionResult(name, evaluation, published, violations)


def run_walkthrough(fixtures: Optional[Mapping[str, str]] = None) -> List[str]:
    """Recompute both conditions and return the walkthrough as output lines."""
    fixtures = FIXTURES if fixtures is None else fixtures
    results = {}
    for name in ("a", "b"):
        try:
            results[name] = evaluate_condition(name, fixtures[name])
        except InvariantViolation:
            raise
        except DepModError as exc:
            raise InvariantViolation(f"embedded fixture ({name}) is broken: {exc}") from exc
    a, b = results["a"].evaluation, results["b"].evaluation
    if not a.delta_q_paper < b.delta_q_paper:
        raise InvariantViolation("condition (b) must score higher than condition (a)")

    lines = [f"Move {MOVE}, m = 10", ""]
    for name, result in results.items():
        evaluation = result.evaluation
        gained, lost = PUBLISHED_TERMS[name]
        lines.append(TITLES[name])
        lines.extend("    " + line for line in fixtures[name].splitlines())
        lines.append(f"  SDP violations:            {result.violations}")
        lines.append(f"  published gained terms:    {_render_terms(_terms(gained))}")
        lines.append(f"  published lost terms:      {_render_terms(_terms(lost))}")
        lines.append(f"  graph gained terms:        {_render_terms(evaluation.gained)}")
        lines.append(f"  graph lost terms:          {_render_terms(evaluation.lost)}")
        lines.append(f"  delta Q (worked example):  {render_rational(evaluation.delta_q_paper)}")
        lines.append(f"  delta Q (directed, 1/m):   {render_rational(evaluation.delta_q)}")
        lines.append("")
    lines.append(
        f"Hiding the violating dependency scores {render_rational(b.delta_q_paper)}"
        f" > {render_rational(a.delta_q_paper)} for the layered graph."
    )
    logger.info("Walkthrough reproduced golden values %s and %s", b.delta_q_paper, a.delta_q_paper)
    return lines
