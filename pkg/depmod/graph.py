"""
Directed class-dependency graph with per-node package assignment.

An edge (src, dst) reads "src depends on dst". Graph values are immutable:
add_node, add_edge, remove_edge and reassign return new graphs and never
touch the receiver. Bulk construction goes through GraphBuilder.
"""

from __future__ import annotations

import re
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .errors import (
    DuplicateEdge,
    DuplicateNode,
    IncompletePartition,
    InvalidIdentifier,
    MissingEdge,
    SelfLoop,
    UnknownNode,
    UnknownPackage,
)

IDENTIFIER_RE = re.compile(r"[A-Za-z0-9_.$-]+")

Edge = Tuple[str, str]


def check_identifier(value, kind="node id"):
    """Return value if it is a valid NodeId/PackageId, else raise."""
    if not isinstance(value, str) or not IDENTIFIER_RE.fullmatch(value):
        raise InvalidIdentifier(value, kind)
    return value


class DependencyGraph:
    """Immutable simple digraph of classes, each assigned to one package."""

    __slots__ = ("_assignment", "_succ", "_pred", "_m", "_sorted_nodes")

    def __init__(
        self,
        assignment: Optional[Mapping[str, str]] = None,
        edges: Iterable[Edge] = (),
    ):
        builder = GraphBuilder()
        for node, package in sorted((assignment or {}).items()):
            builder.add_node(node, package)
        for src, dst in edges:
            builder.add_edge(src, dst)
        self._adopt(builder._assignment, builder._succ, builder._pred)

    def _adopt(self, assignment, succ, pred):
        self._assignment: Dict[str, str] = dict(assignment)
        self._succ: Dict[str, FrozenSet[str]] = {n: frozenset(s) for n, s in succ.items()}
        self._pred: Dict[str, FrozenSet[str]] = {n: frozenset(p) for n, p in pred.items()}
        self._m = sum(len(s) for s in self._succ.values())
        self._sorted_nodes = None

    @classmethod
    def _from_parts(cls, assignment, succ, pred) -> "DependencyGraph":
        graph = cls.__new__(cls)
        graph._adopt(assignment, succ, pred)
        return graph

    # ---- queries -----------------------------------------------------------

    @property
    def nodes(self) -> Tuple[str, ...]:
        """All node ids in code-point order."""
        if self._sorted_nodes is None:
            self._sorted_nodes = tuple(sorted(self._assignment))
        return self._sorted_nodes

    @property
    def node_count(self) -> int:
        return len(self._assignment)

    @property
    def m(self) -> int:
        """Number of edges."""
        return self._m

    def edges(self) -> List[Edge]:
        """All edges sorted by (src, dst)."""
        return [(src, dst) for src in self.nodes for dst in sorted(self._succ[src])]

    def has_node(self, node) -> bool:
        return node in self._assignment

    def has_edge(self, src, dst) -> bool:
        return src in self._succ and dst in self._succ[src]

    def _require(self, node):
        if node not in self._assignment:
            raise UnknownNode(node)

    def package_of(self, node) -> str:
        self._require(node)
        return self._assignment[node]

    @property
    def assignment(self) -> Dict[str, str]:
        """A copy of the node → package map."""
        return dict(self._assignment)

    def packages(self) -> List[str]:
        return sorted(set(self._assignment.values()))

    def has_package(self, package) -> bool:
        return package in set(self._assignment.values())

    def members(self, package) -> List[str]:
        found = [n for n in self.nodes if self._assignment[n] == package]
        if not found:
            raise UnknownPackage(package)
        return found

    def out_degree(self, node) -> int:
        self._require(node)
        return len(self._succ[node])

    def in_degree(self, node) -> int:
        self._require(node)
        return len(self._pred[node])

    def successors(self, node) -> List[str]:
        self._require(node)
        return sorted(self._succ[node])

    def predecessors(self, node) -> List[str]:
        self._require(node)
        return sorted(self._pred[node])

    def is_border_node(self, node) -> bool:
        """True when node has an edge, either direction, leaving its package."""
        self._require(node)
        package = self._assignment[node]
        return any(
            self._assignment[other] != package
            for other in self._succ[node] | self._pred[node]
        )

    def cross_edges(self) -> List[Edge]:
        """Edges whose endpoints sit in different packages."""
        return [
            (src, dst)
            for src, dst in self.edges()
            if self._assignment[src] != self._assignment[dst]
        ]

    # ---- value-returning updates --------------------------------------------

    def add_node(self, node, package) -> "DependencyGraph":
        check_identifier(node, "node id")
        check_identifier(package, "package id")
        if node in self._assignment:
            raise DuplicateNode(node)
        assignment = dict(self._assignment)
        assignment[node] = package
        succ = dict(self._succ)
        pred = dict(self._pred)
        succ[node] = frozenset()
        pred[node] = frozenset()
        return DependencyGraph._from_parts(assignment, succ, pred)

    def add_edge(self, src, dst) -> "DependencyGraph":
        self._check_new_edge(src, dst)
        succ = dict(self._succ)
        pred = dict(self._pred)
        succ[src] = succ[src] | {dst}
        pred[dst] = pred[dst] | {src}
        return DependencyGraph._from_parts(self._assignment, succ, pred)

    def remove_edge(self, src, dst) -> "DependencyGraph":
        self._require(src)
        self._require(dst)
        if dst not in self._succ[src]:
            raise MissingEdge(src, dst)
        succ = dict(self._succ)
        pred = dict(self._pred)
        succ[src] = succ[src] - {dst}
        pred[dst] = pred[dst] - {src}
        return DependencyGraph._from_parts(self._assignment, succ, pred)

    def reassign(self, node, package) -> "DependencyGraph":
        """Move node into package; edges and degrees are untouched."""
        self._require(node)
        check_identifier(package, "package id")
        if self._assignment[node] == package:
            return self
        assignment = dict(self._assignment)
        assignment[node] = package
        return DependencyGraph._from_parts(assignment, self._succ, self._pred)

    def with_edges(self, edges: Iterable[Edge]) -> "DependencyGraph":
        """Same nodes and packages, different edge set."""
        builder = GraphBuilder()
        for node in self.nodes:
            builder.add_node(node, self._assignment[node])
        for src, dst in edges:
            builder.add_edge(src, dst)
        return builder.build()

    def _check_new_edge(self, src, dst):
        self._require(src)
        self._require(dst)
        if src == dst:
            raise SelfLoop(src)
        if dst in self._succ[src]:
            raise DuplicateEdge(src, dst)

    # ---- dunder ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return self._assignment == other._assignment and self._succ == other._succ

    __hash__ = None

    def __repr__(self):
        return (
            f"DependencyGraph(nodes={self.node_count}, edges={self.m}, "
            f"packages={len(self.packages())})"
        )


class GraphBuilder:
    """Mutable, single-owner accumulator that finalizes into a DependencyGraph."""

    def __init__(self):
        self._assignment: Dict[str, str] = {}
        self._succ: Dict[str, set] = {}
        self._pred: Dict[str, set] = {}

    def has_node(self, node) -> bool:
        return node in self._assignment

    def has_edge(self, src, dst) -> bool:
        return src in self._succ and dst in self._succ[src]

    def add_node(self, node, package) -> "GraphBuilder":
        check_identifier(node, "node id")
        check_identifier(package, "package id")
        if node in self._assignment:
            raise DuplicateNode(node)
        self._assignment[node] = package
        self._succ[node] = set()
        self._pred[node] = set()
        return self

    def add_edge(self, src, dst) -> "GraphBuilder":
        for node in (src, dst):
            if node not in self._assignment:
                raise UnknownNode(node)
        if src == dst:
            raise SelfLoop(src)
        if dst in self._succ[src]:
            raise DuplicateEdge(src, dst)
        self._succ[src].add(dst)
        self._pred[dst].add(src)
        return self

    def build(self) -> DependencyGraph:
        return DependencyGraph._from_parts(self._assignment, self._succ, self._pred)


class Partition:
    """Total map from node id to an opaque community label."""

    __slots__ = ("_labels",)

    def __init__(self, labels: Mapping[str, str]):
        self._labels: Dict[str, str] = dict(labels)

    @classmethod
    def from_packages(cls, graph: DependencyGraph) -> "Partition":
        return cls(graph.assignment)

    @classmethod
    def singletons(cls, graph: DependencyGraph) -> "Partition":
        return cls({n: n for n in graph.nodes})

    @classmethod
    def single(cls, graph: DependencyGraph, label="all") -> "Partition":
        return cls({n: label for n in graph.nodes})

    def label(self, node) -> str:
        return self._labels[node]

    __getitem__ = label

    def __contains__(self, node):
        return node in self._labels

    def __len__(self):
        return len(self._labels)

    def items(self):
        return sorted(self._labels.items())

    def require_total(self, graph: DependencyGraph) -> "Partition":
        missing = [n for n in graph.nodes if n not in self._labels]
        if missing:
            raise IncompletePartition(missing)
        return self

    def communities(self) -> Dict[str, List[str]]:
        """label → sorted members, labels in code-point order."""
        grouped: Dict[str, List[str]] = {}
        for node, label in sorted(self._labels.items()):
            grouped.setdefault(label, []).append(node)
        return dict(sorted(grouped.items()))

    def blocks(self) -> FrozenSet[FrozenSet[str]]:
        """The partition with labels forgotten, for comparison up to renaming."""
        return frozenset(frozenset(m) for m in self.communities().values())

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._labels == other._labels

    __hash__ = None

    def __repr__(self):
        return f"Partition({len(self.communities())} communities, {len(self)} nodes)"
