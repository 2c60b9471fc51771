"""
🔍 Stable Dependencies Principle checks.

Two detectors are exposed. check_sdp compares package instabilities along
every cross-package edge. remark_findings applies the node-level degree
conditions to the same edges. Findings carry the name of the detector
that produced them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .errors import NotBorderNode
from .graph import DependencyGraph
from .metrics import COUNT_CLASSES, Instability, instability

logger = logging.getLogger("depmod.sdp")

INSTABILITY_ORDERING = "instability-ordering"
DEGREE_REMARK = "degree-remark"


class Severity(str, Enum):
    VIOLATION = "violation"
    BOUNDARY_EQUAL = "boundary-equal"
    UNDEFINED_ENDPOINT = "undefined-endpoint"


class Verdict(str, Enum):
    REMARK1 = "remark1"  # degree pattern under which SDP holds
    REMARK2 = "remark2"  # degree pattern under which SDP is broken
    NEITHER = "neither"


@dataclass(frozen=True)
class SdpViolation:
    src: str
    dst: str
    src_package: str
    dst_package: str
    src_instability: Instability
    dst_instability: Instability
    severity: Severity
    detected_by: str = INSTABILITY_ORDERING

    @property
    def edge(self) -> Tuple[str, str]:
        return (self.src, self.dst)


def classify_degrees(i_out: int, i_in: int, j_out: int, j_in: int) -> Verdict:
    if i_out > i_in and j_out < j_in:
        return Verdict.REMARK1
    if i_out < i_in and j_out > j_in:
        return Verdict.REMARK2
    return Verdict.NEITHER


@dataclass(frozen=True)
class RemarkCondition:
    i_out: int
    i_in: int
    j_out: int
    j_in: int
    verdict: Verdict

    @classmethod
    def of(cls, i_out, i_in, j_out, j_in) -> "RemarkCondition":
        return cls(i_out, i_in, j_out, j_in, classify_degrees(i_out, i_in, j_out, j_in))

    def exchanged(self) -> "RemarkCondition":
        """The same degrees with the roles of i and j swapped."""
        return RemarkCondition.of(self.j_out, self.j_in, self.i_out, self.i_in)


@dataclass(frozen=True)
class RemarkFinding:
    src: str
    dst: str
    condition: RemarkCondition
    detected_by: str = DEGREE_REMARK


def border_nodes(graph: DependencyGraph, package: str) -> List[str]:
    """Members of package with at least one edge to or from another package."""
    return [n for n in graph.members(package) if graph.is_border_node(n)]


def _severity(src_i: Instability, dst_i: Instability):
    if not (src_i.is_defined and dst_i.is_defined):
        return Severity.UNDEFINED_ENDPOINT
    if src_i.value < dst_i.value:
        return Severity.VIOLATION
    if src_i.value == dst_i.value:
        return Severity.BOUNDARY_EQUAL
    return None


def check_sdp(graph: DependencyGraph, count: str = COUNT_CLASSES) -> List[SdpViolation]:
    """Cross-package edges that break, tie, or cannot be checked against SDP.

    A dependency src -> dst is expected to point from a less stable
    package to a more stable one (I(src) > I(dst)). Sorted by (src, dst).
    """
    cache: Dict[str, Instability] = {}

    def inst(package):
        if package not in cache:
            cache[package] = instability(graph, package, count)
        return cache[package]

    findings = []
    for src, dst in graph.cross_edges():
        src_pkg = graph.package_of(src)
        dst_pkg = graph.package_of(dst)
        severity = _severity(inst(src_pkg), inst(dst_pkg))
        if severity is None:
            continue
        findings.append(
            SdpViolation(src, dst, src_pkg, dst_pkg, inst(src_pkg), inst(dst_pkg), severity)
        )
    violations = sum(1 for f in findings if f.severity is Severity.VIOLATION)
    logger.info("SDP check: %d cross edges, %d violations", len(graph.cross_edges()), violations)
    return findings


def classify_remark(graph: DependencyGraph, i: str, j: str) -> RemarkCondition:
    """Degree-condition verdict for border nodes i and j."""
    for node in (i, j):
        if not graph.is_border_node(node):
            raise NotBorderNode(node)
    return RemarkCondition.of(
        graph.out_degree(i), graph.in_degree(i), graph.out_degree(j), graph.in_degree(j)
    )


def remark_findings(graph: DependencyGraph) -> List[RemarkFinding]:
    """Every cross-package edge classified by the degree conditions."""
    # both endpoints of a cross edge are border nodes by construction
    return [RemarkFinding(src, dst, classify_remark(graph, src, dst)) for src, dst in graph.cross_edges()]
