"""
🧩 Greedy agglomerative maximization of directed modularity.

Starts from singleton communities and repeatedly merges the connected pair
with the largest modularity gain. Merge gains are kept only for pairs
joined by at least one edge: an unconnected pair can never raise Q.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import EmptyGraph, InvariantViolation
from .graph import DependencyGraph, Partition
from .metrics import modularity_directed
from .moves import Move, MoveEvaluation, rank_moves

logger = logging.getLogger("depmod.community")


@dataclass(frozen=True)
class Merge:
    kept: str
    absorbed: str
    delta_q: Fraction


@dataclass
class SuggestionReport:
    initial_q: Fraction
    final_q: Fraction
    merges: List[Merge] = field(default_factory=list)
    moves: List[Move] = field(default_factory=list)
    evaluations: List[MoveEvaluation] = field(default_factory=list)


def greedy_partition(graph: DependencyGraph) -> Tuple[Partition, SuggestionReport]:
    """Merge communities while the best connected merge does not lower Q.

    A merge is taken when its gain is positive, or zero for a pair joined by
    an edge. Ties go to the lexicographically smallest (label, label) pair.
    Each community is labelled with its smallest member.
    """
    m = graph.m
    if m == 0:
        raise EmptyGraph("Cannot partition a graph without edges")

    members: Dict[str, List[str]] = {n: [n] for n in graph.nodes}
    out_sum = {n: graph.out_degree(n) for n in graph.nodes}
    in_sum = {n: graph.in_degree(n) for n in graph.nodes}
    links: Dict[str, Dict[str, int]] = defaultdict(dict)
    for src, dst in graph.edges():
        links[src][dst] = links[src].get(dst, 0) + 1
        links[dst][src] = links[dst].get(src, 0) + 1

    q = modularity_directed(graph, Partition.singletons(graph)).value
    report = SuggestionReport(initial_q=q, final_q=q)
    m2 = m * m

    while True:
        best: Optional[Tuple[Fraction, str, str]] = None
        for a in sorted(links):
            for b in sorted(links[a]):
                if b <= a:
                    continue
                gain = Fraction(links[a][b], m) - Fraction(
                    out_sum[a] * in_sum[b] + out_sum[b] * in_sum[a], m2
                )
                if gain < 0:
                    continue
                if best is None or gain > best[0]:
                    best = (gain, a, b)
        if best is None:
            break

        gain, kept, absorbed = best
        for other, count in links.pop(absorbed).items():
            del links[other][absorbed]
            if other == kept:
                continue
            links[kept][other] = links[kept].get(other, 0) + count
            links[other][kept] = links[other].get(kept, 0) + count
        out_sum[kept] += out_sum.pop(absorbed)
        in_sum[kept] += in_sum.pop(absorbed)
        members[kept].extend(members.pop(absorbed))
        q += gain
        report.merges.append(Merge(kept, absorbed, gain))
        logger.info("Merged %s into %s (delta_q=%s, Q=%s)", absorbed, kept, gain, q)

    partition = Partition({n: label for label, group in members.items() for n in group})
    recomputed = modularity_directed(graph, partition).value
    if recomputed != q:
        raise InvariantViolation(f"merge trace Q {q} disagrees with recomputed Q {recomputed}")
    report.final_q = q
    return partition, report


def _fresh_package(base: str, taken) -> str:
    candidate = base
    suffix = 1
    while candidate in taken:
        suffix += 1
        candidate = f"{base}.{suffix}"
    return candidate


def partition_to_moves(graph: DependencyGraph, suggested: Partition) -> List[Move]:
    """Moves that turn the current packages into the suggested communities.

    Each community claims the existing package holding the plurality of its
    members (ties by package id). Claims are granted largest plurality first;
    a community whose package is already claimed gets a new package
    "<package>.<community label>".
    """
    suggested.require_total(graph)
    communities = suggested.communities()

    claims = []
    for label, group in communities.items():
        counts = Counter(graph.package_of(n) for n in group)
        package, count = min(counts.items(), key=lambda item: (-item[1], item[0]))
        claims.append((-count, package, label))

    taken = set(graph.packages())
    claimed = set()
    target: Dict[str, str] = {}
    for _, package, label in sorted(claims):
        if package in claimed:
            fresh = _fresh_package(f"{package}.{label}", taken)
            taken.add(fresh)
            target[label] = fresh
            logger.info("Community %s needs a new package: %s", label, fresh)
        else:
            claimed.add(package)
            target[label] = package

    moves = []
    for node in graph.nodes:
        current = graph.package_of(node)
        destination = target[suggested[node]]
        if destination != current:
            moves.append(Move(node, current, destination))
    return moves


def suggest(graph: DependencyGraph) -> Tuple[Partition, SuggestionReport]:
    """Greedy partition, the moves that realize it, and each move's evaluation."""
    partition, report = greedy_partition(graph)
    report.moves = partition_to_moves(graph, partition)
    report.evaluations = rank_moves(graph, report.moves)
    return partition, report
