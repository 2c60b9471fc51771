"""
🔄 Class movements and their effect on directed modularity.

A Move relocates one class from its current package to another. Each move
is scored two ways:

  delta_q         exact change of directed modularity (prefactor 1/m,
                  null term k_out*k_in/m), from full recomputation
  delta_q_paper   the worked-example arithmetic: unnormalized per-edge
                  terms 1 - k_out*k_in/(2m) summed over edges that become
                  intra-package, minus those that stop being intra-package
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import ConfigError, EmptyGraph, InvalidIdentifier, InvalidMove
from .graph import DependencyGraph, check_identifier
from .metrics import modularity_directed
from .sdp import Severity, check_sdp

logger = logging.getLogger("depmod.moves")


@dataclass(frozen=True)
class Move:
    node: str
    from_pkg: str
    to_pkg: str

    def __str__(self):
        return f"({self.node}, {self.from_pkg}, {self.to_pkg})"


@dataclass(frozen=True)
class ContributionTerm:
    """One summand A_ij - k_out*k_in/denominator."""

    k_out: int
    k_in: int
    present: int = 1

    def __post_init__(self):
        if self.present not in (0, 1):
            raise ConfigError(f"present must be 0 or 1, got {self.present!r}")
        if self.k_out < 0 or self.k_in < 0:
            raise ConfigError("degrees must be non-negative")

    def value(self, denominator: int) -> Fraction:
        return self.present - Fraction(self.k_out * self.k_in, denominator)


@dataclass(frozen=True)
class MoveEvaluation:
    move: Move
    q_before: Fraction
    q_after: Fraction
    delta_q: Fraction
    delta_q_paper: Fraction
    violations_suppressed: int
    gained: Tuple[ContributionTerm, ...] = field(default=())
    lost: Tuple[ContributionTerm, ...] = field(default=())


class Ordering(str, Enum):
    SATISFYING_LARGER = "satisfying-larger"
    VIOLATING_LARGER = "violating-larger"
    EQUAL = "equal"


def validate_move(graph: DependencyGraph, move: Move) -> Move:
    if not graph.has_node(move.node):
        raise InvalidMove(move, f"unknown class {move.node}")
    current = graph.package_of(move.node)
    if move.from_pkg != current:
        raise InvalidMove(move, f"{move.node} is in {current}, not {move.from_pkg}")
    if move.to_pkg == move.from_pkg:
        raise InvalidMove(move, "source and destination package are the same")
    try:
        check_identifier(move.to_pkg, "package id")
    except InvalidIdentifier as exc:
        raise InvalidMove(move, str(exc)) from exc
    return move


def paper_terms(
    graph: DependencyGraph, move: Move
) -> Tuple[List[ContributionTerm], List[ContributionTerm]]:
    """Edge terms a move adds to and removes from the intra-package sum."""
    validate_move(graph, move)
    node = move.node
    gained, lost = [], []
    incident = [(node, dst) for dst in graph.successors(node)]
    incident += [(src, node) for src in graph.predecessors(node)]
    for src, dst in sorted(incident):
        other = dst if src == node else src
        other_pkg = graph.package_of(other)
        term = ContributionTerm(graph.out_degree(src), graph.in_degree(dst), 1)
        if other_pkg == move.to_pkg:
            gained.append(term)
        elif other_pkg == move.from_pkg:
            lost.append(term)
    return gained, lost


def delta_q_paper_convention(
    gained: Iterable[ContributionTerm], lost: Iterable[ContributionTerm], m: int
) -> Fraction:
    """Sum of gained minus lost terms, each 1 - k_out*k_in/(2m), with no 1/m prefactor."""
    if m <= 0:
        raise EmptyGraph()
    return sum((t.value(2 * m) for t in gained), Fraction(0)) - sum(
        (t.value(2 * m) for t in lost), Fraction(0)
    )


def delta_q_incremental(graph: DependencyGraph, move: Move) -> Fraction:
    """Directed-modularity change from the summands that involve the moved class only."""
    validate_move(graph, move)
    m = graph.m
    if m == 0:
        raise EmptyGraph()
    node = move.node
    k_out = graph.out_degree(node)
    k_in = graph.in_degree(node)
    neighbours = set(graph.successors(node))
    preds = set(graph.predecessors(node))

    def side_gain(package):
        others = [
            n for n in graph.nodes if n != node and graph.package_of(n) == package
        ]
        edges = sum(1 for n in others if n in neighbours) + sum(1 for n in others if n in preds)
        out_sum = sum(graph.out_degree(n) for n in others)
        in_sum = sum(graph.in_degree(n) for n in others)
        return edges - Fraction(k_out * in_sum + k_in * out_sum, m)

    return (side_gain(move.to_pkg) - side_gain(move.from_pkg)) / m


def evaluate_move(graph: DependencyGraph, move: Move) -> MoveEvaluation:
    validate_move(graph, move)
    if graph.m == 0:
        raise EmptyGraph()

    q_before = modularity_directed(graph).value
    q_after = modularity_directed(graph.reassign(move.node, move.to_pkg)).value
    gained, lost = paper_terms(graph, move)

    suppressed = 0
    for finding in check_sdp(graph):
        if finding.severity is not Severity.VIOLATION or move.node not in finding.edge:
            continue
        other = finding.dst if finding.src == move.node else finding.src
        if graph.package_of(other) == move.to_pkg:
            suppressed += 1

    evaluation = MoveEvaluation(
        move=move,
        q_before=q_before,
        q_after=q_after,
        delta_q=q_after - q_before,
        delta_q_paper=delta_q_paper_convention(gained, lost, graph.m),
        violations_suppressed=suppressed,
        gained=tuple(gained),
        lost=tuple(lost),
    )
    logger.debug("Evaluated %s: delta_q=%s", move, evaluation.delta_q)
    return evaluation


def contribution(k_out: int, k_in: int, m: int, a_ij: int = 1) -> Fraction:
    if m <= 0:
        raise EmptyGraph()
    return a_ij - Fraction(k_out * k_in, m)


def proposition_compare(
    sat: Tuple[int, int], viol: Tuple[int, int], m: int, a_ij: int = 1
) -> Ordering:
    """Compare the summand a_ij - k_out*k_in/m of the satisfying and violating scenarios.

    sat is (k_i_out, k_j_in) under the satisfying degree pattern, viol the
    barred pair (k_j_out, k_i_in) after the role exchange.
    """
    satisfying = contribution(sat[0], sat[1], m, a_ij)
    violating = contribution(viol[0], viol[1], m, a_ij)
    if violating > satisfying:
        return Ordering.VIOLATING_LARGER
    if satisfying > violating:
        return Ordering.SATISFYING_LARGER
    return Ordering.EQUAL


def rank_moves(graph: DependencyGraph, candidates: Sequence[Move]) -> List[MoveEvaluation]:
    """Evaluate every candidate; best delta_q first, ties by (class, destination)."""
    for move in candidates:
        validate_move(graph, move)
    evaluations = [evaluate_move(graph, move) for move in candidates]
    return sorted(evaluations, key=lambda e: (-e.delta_q, e.move.node, e.move.to_pkg))
