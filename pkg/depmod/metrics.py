"""
📏 Package and partition metrics.

Instability, the intra-community edge fraction, the null-model edge
expectation, and undirected / directed modularity. Every value is an exact
Fraction; decimals exist only for display.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

from .errors import ConfigError, EmptyGraph
from .graph import DependencyGraph, Partition

logger = logging.getLogger("depmod.metrics")

UNDIRECTED = "undirected"
DIRECTED = "directed"
WORKED_EXAMPLE = "worked-example"

COUNT_CLASSES = "classes"
COUNT_EDGES = "edges"


def to_decimal(value: Fraction) -> float:
    """Six-place decimal rendering of an exact value."""
    return round(float(value), 6)


def render_rational(value: Fraction) -> str:
    """'57/20 (2.85)' style rendering."""
    return f"{value} ({to_decimal(value)!r})"


@dataclass(frozen=True)
class Instability:
    """Ce/(Ca+Ce), or undefined when the package has no cross-package coupling."""

    value: Optional[Fraction] = None

    @classmethod
    def of(cls, ca: int, ce: int) -> "Instability":
        if ca + ce == 0:
            return cls(None)
        return cls(Fraction(ce, ca + ce))

    @property
    def is_defined(self) -> bool:
        return self.value is not None

    def render(self) -> str:
        return "n/a" if self.value is None else str(self.value)

    def as_json(self) -> Optional[str]:
        return None if self.value is None else str(self.value)


UNDEFINED = Instability(None)


@dataclass(frozen=True)
class PackageMetrics:
    package: str
    ca: int
    ce: int
    instability: Instability
    border_nodes: Tuple[str, ...]


@dataclass(frozen=True)
class Modularity:
    value: Fraction
    convention: str

    @property
    def decimal(self) -> float:
        return to_decimal(self.value)

    def render(self) -> str:
        return render_rational(self.value)


def _check_count_mode(count):
    if count not in (COUNT_CLASSES, COUNT_EDGES):
        raise ConfigError(f"count must be '{COUNT_CLASSES}' or '{COUNT_EDGES}', got {count!r}")


def coupling_counts(
    graph: DependencyGraph, package: str, count: str = COUNT_CLASSES
) -> Tuple[int, int]:
    """Afferent and efferent coupling of a package.

    By default both count distinct classes: Ca is the number of outside
    classes with an edge into the package, Ce the number of inside classes
    with an edge out of it. count="edges" counts crossing edges instead.
    """
    _check_count_mode(count)
    members = set(graph.members(package))
    incoming = [
        (src, dst)
        for dst in members
        for src in graph.predecessors(dst)
        if src not in members
    ]
    outgoing = [
        (src, dst)
        for src in members
        for dst in graph.successors(src)
        if dst not in members
    ]
    if count == COUNT_EDGES:
        return len(incoming), len(outgoing)
    return len({src for src, _ in incoming}), len({src for src, _ in outgoing})


def instability(
    graph: DependencyGraph, package: str, count: str = COUNT_CLASSES
) -> Instability:
    ca, ce = coupling_counts(graph, package, count)
    return Instability.of(ca, ce)


def _labels(graph: DependencyGraph, partition: Optional[Partition]) -> Partition:
    if partition is None:
        return Partition.from_packages(graph)
    return partition.require_total(graph)


def _undirected_pairs(graph: DependencyGraph) -> Set[Tuple[str, str]]:
    # A_vw = 1 if either direction exists
    return {(min(src, dst), max(src, dst)) for src, dst in graph.edges()}


def intra_community_fraction(
    graph: DependencyGraph,
    partition: Optional[Partition] = None,
    symmetric: bool = False,
) -> Fraction:
    """Share of edges falling inside communities.

    With symmetric=True the graph is read as undirected and the value is
    computed as (1/2m) * sum_vw A_vw delta(C_v, C_w).
    """
    part = _labels(graph, partition)
    if symmetric:
        pairs = _undirected_pairs(graph)
        if not pairs:
            raise EmptyGraph()
        # each unordered pair appears twice in the symmetric double sum
        inside = sum(2 for v, w in pairs if part[v] == part[w])
        return Fraction(inside, 2 * len(pairs))
    if graph.m == 0:
        raise EmptyGraph()
    inside = sum(1 for src, dst in graph.edges() if part[src] == part[dst])
    return Fraction(inside, graph.m)


def null_edge_probability(k_v: int, k_w: int, m: int) -> Fraction:
    """Expected number of edges between v and w after random rewiring: k_v k_w / 2m."""
    if m <= 0:
        raise EmptyGraph()
    return Fraction(k_v * k_w, 2 * m)


def directed_null_expectation(k_out: int, k_in: int, m: int) -> Fraction:
    """Directed null term k_i^out k_j^in / m."""
    if m <= 0:
        raise EmptyGraph()
    return Fraction(k_out * k_in, m)


def modularity_undirected(
    graph: DependencyGraph, partition: Optional[Partition] = None
) -> Modularity:
    """Q = 1/2m sum_vw [A_vw - k_v k_w / 2m] delta(C_v, C_w) on the symmetrized graph."""
    part = _labels(graph, partition)
    pairs = _undirected_pairs(graph)
    m = len(pairs)
    if m == 0:
        raise EmptyGraph()

    degree: Dict[str, int] = {n: 0 for n in graph.nodes}
    inside: Dict[str, int] = {}
    for v, w in pairs:
        degree[v] += 1
        degree[w] += 1
        if part[v] == part[w]:
            inside[part[v]] = inside.get(part[v], 0) + 1

    degree_sum: Dict[str, int] = {}
    for node, k in degree.items():
        degree_sum[part[node]] = degree_sum.get(part[node], 0) + k

    q = Fraction(0)
    for label, total in degree_sum.items():
        q += Fraction(inside.get(label, 0), m) - Fraction(total * total, 4 * m * m)
    return Modularity(q, UNDIRECTED)


def modularity_directed(
    graph: DependencyGraph, partition: Optional[Partition] = None
) -> Modularity:
    """Q = 1/m sum_ij [A_ij - k_i^out k_j^in / m] delta(C_i, C_j)."""
    part = _labels(graph, partition)
    m = graph.m
    if m == 0:
        raise EmptyGraph()

    inside: Dict[str, int] = {}
    out_sum: Dict[str, int] = {}
    in_sum: Dict[str, int] = {}
    for node in graph.nodes:
        label = part[node]
        out_sum[label] = out_sum.get(label, 0) + graph.out_degree(node)
        in_sum[label] = in_sum.get(label, 0) + graph.in_degree(node)
    for src, dst in graph.edges():
        if part[src] == part[dst]:
            inside[part[src]] = inside.get(part[src], 0) + 1

    q = Fraction(0)
    for label in out_sum:
        q += Fraction(inside.get(label, 0), m) - Fraction(out_sum[label] * in_sum[label], m * m)
    return Modularity(q, DIRECTED)


def package_report(graph: DependencyGraph, count: str = COUNT_CLASSES) -> List[PackageMetrics]:
    """One PackageMetrics per package, sorted by package id."""
    report = []
    for package in graph.packages():
        ca, ce = coupling_counts(graph, package, count)
        border = tuple(n for n in graph.members(package) if graph.is_border_node(n))
        report.append(PackageMetrics(package, ca, ce, Instability.of(ca, ce), border))
        if ca + ce == 0:
            logger.info("Package %s has no cross-package coupling; instability undefined", package)
    return report
