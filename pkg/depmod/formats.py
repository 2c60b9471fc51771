"""
📄 Graph file formats: native .deps, a DOT subset, and JSON.

Native grammar, one statement per line:

    # comment
    node <class-id> <package-id>
    edge <src> <dst>

Identifiers are runs of [A-Za-z0-9_.$-]. Nodes must be declared before an
edge uses them. serialize_deps writes the canonical form: nodes sorted by
id, then edges sorted by (src, dst), single spaces, LF endings.
"""

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import pydot

from .errors import (
    DepsSyntaxError,
    FormatError,
    GraphError,
    MissingPackage,
    ParseContextError,
    UnsupportedDot,
)
from .graph import IDENTIFIER_RE, DependencyGraph, GraphBuilder

logger = logging.getLogger("depmod.formats")

TOKEN_RE = re.compile(r"\S+")

FORMAT_BY_SUFFIX = {
    ".deps": "deps",
    ".dot": "dot",
    ".gv": "dot",
    ".json": "json",
}
FORMATS = ("deps", "dot", "json")


def _apply(line, action, *args):
    try:
        action(*args)
    except GraphError as exc:
        raise ParseContextError(line, exc) from exc


def parse_deps(text: str) -> DependencyGraph:
    builder = GraphBuilder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = list(TOKEN_RE.finditer(raw))
        if not tokens or tokens[0].group().startswith("#"):
            continue
        keyword = tokens[0].group()
        if keyword not in ("node", "edge"):
            raise DepsSyntaxError(lineno, tokens[0].start() + 1, f"unknown statement {keyword!r}")
        if len(tokens) != 3:
            column = tokens[3].start() + 1 if len(tokens) > 3 else len(raw.rstrip()) + 1
            raise DepsSyntaxError(lineno, column, f"'{keyword}' takes exactly 2 arguments, got {len(tokens) - 1}")
        for token in tokens[1:]:
            if not IDENTIFIER_RE.fullmatch(token.group()):
                raise DepsSyntaxError(lineno, token.start() + 1, f"invalid identifier {token.group()!r}")
        first, second = tokens[1].group(), tokens[2].group()
        if keyword == "node":
            _apply(lineno, builder.add_node, first, second)
        else:
            _apply(lineno, builder.add_edge, first, second)
    return builder.build()


def serialize_deps(graph: DependencyGraph) -> str:
    lines = [f"node {n} {graph.package_of(n)}" for n in graph.nodes]
    lines += [f"edge {src} {dst}" for src, dst in graph.edges()]
    return "".join(line + "\n" for line in lines)


# ---- JSON ------------------------------------------------------------------


def parse_json_graph(text: str) -> DependencyGraph:
    """{"nodes": [{"id": .., "package": ..}], "edges": [[src, dst], ..]}"""
    if not text.strip():
        return DependencyGraph()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DepsSyntaxError(exc.lineno, exc.colno, exc.msg) from exc
    if not isinstance(data, dict):
        raise FormatError("JSON graph must be an object with 'nodes' and 'edges'")
    builder = GraphBuilder()
    try:
        for entry in data.get("nodes", []):
            builder.add_node(entry["id"], entry["package"])
        for pair in data.get("edges", []):
            if len(pair) != 2:
                raise FormatError(f"edge must be a [src, dst] pair, got {pair!r}")
            builder.add_edge(pair[0], pair[1])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed JSON graph: {exc}") from exc
    return builder.build()


def serialize_json_graph(graph: DependencyGraph) -> str:
    data = {
        "nodes": [{"id": n, "package": graph.package_of(n)} for n in graph.nodes],
        "edges": [[src, dst] for src, dst in graph.edges()],
    }
    return json.dumps(data, indent=2) + "\n"


# ---- DOT subset --------------------------------------------------------------


def _unquote(value) -> str:
    value = str(value).strip()
    if len(value) >= 2 and value[0] == value[-1] == '"':
        return value[1:-1]
    return value


def _locate(text: str, pattern: str) -> Tuple[Optional[int], Optional[int]]:
    match = re.search(pattern, text)
    if match is None:
        return None, None
    before = text[: match.start()]
    line = before.count("\n") + 1
    column = match.start() - (before.rfind("\n") + 1) + 1
    return line, column


class _DotCollector:
    """Walks a pydot graph gathering nodes, packages and edges."""

    def __init__(self, text):
        self.text = text
        self.explicit: Dict[str, str] = {}
        self.from_cluster: Dict[str, str] = {}
        self.seen: List[str] = []
        self.edges: List[Tuple[str, str]] = []

    def _see(self, name, cluster_package):
        if not IDENTIFIER_RE.fullmatch(name):
            raise UnsupportedDot(f"unsupported node id {name!r}", *_locate(self.text, re.escape(name)))
        if name not in self.seen:
            self.seen.append(name)
        if cluster_package is not None:
            self.from_cluster.setdefault(name, cluster_package)

    def collect(self, graph, cluster_package=None):
        for node in graph.get_nodes():
            name = _unquote(node.get_name())
            if name in ("node", "graph", "edge"):
                continue
            self._see(name, cluster_package)
            package = node.get_attributes().get("package")
            if package is not None:
                package = _unquote(package)
                previous = self.explicit.get(name)
                if previous is not None and previous != package:
                    raise UnsupportedDot(
                        f"node {name} declared in packages {previous} and {package}",
                        *_locate(self.text, re.escape(package)),
                    )
                self.explicit[name] = package

        for edge in graph.get_edges():
            src, dst = edge.get_source(), edge.get_destination()
            if not isinstance(src, str) or not isinstance(dst, str):
                raise UnsupportedDot("edge endpoints must be node ids", *_locate(self.text, r"->\s*\{|\}\s*->"))
            src, dst = _unquote(src), _unquote(dst)
            self._see(src, cluster_package)
            self._see(dst, cluster_package)
            self.edges.append((src, dst))

        for sub in graph.get_subgraphs():
            name = _unquote(sub.get_name())
            package = cluster_package
            if name.startswith("cluster_"):
                package = name[len("cluster_"):]
                if not IDENTIFIER_RE.fullmatch(package):
                    raise UnsupportedDot(f"invalid package in cluster name {name!r}", *_locate(self.text, re.escape(name)))
            self.collect(sub, package)

    def build(self) -> DependencyGraph:
        builder = GraphBuilder()
        for name in sorted(self.seen):
            package = self.explicit.get(name, self.from_cluster.get(name))
            if package is None:
                raise MissingPackage(name)
            builder.add_node(name, package)
        for src, dst in self.edges:
            builder.add_edge(src, dst)
        return builder.build()


def parse_dot_subset(text: str) -> DependencyGraph:
    """Digraph with a "package" node attribute or cluster_<package> subgraphs."""
    if not text.strip():
        return DependencyGraph()
    try:
        graphs = pydot.graph_from_dot_data(text)
    except Exception as exc:
        raise UnsupportedDot(f"cannot parse DOT: {exc}") from exc
    if not graphs:
        raise UnsupportedDot("cannot parse DOT document")
    if len(graphs) > 1:
        raise UnsupportedDot("only one graph per document is supported")
    dot = graphs[0]
    if dot.get_type() != "digraph":
        raise UnsupportedDot("only 'digraph' is supported", *_locate(text, r"\bgraph\b"))
    collector = _DotCollector(text)
    collector.collect(dot)
    return collector.build()


def to_dot(graph: DependencyGraph, name: str = "dependencies") -> str:
    """DOT rendering with one cluster per package; parse_dot_subset reads it back."""
    dot = pydot.Dot(graph_name=name, graph_type="digraph")
    for package in graph.packages():
        cluster = pydot.Cluster(package, label=package)
        for node in graph.members(package):
            cluster.add_node(pydot.Node(node, package=package))
        dot.add_subgraph(cluster)
    for src, dst in graph.edges():
        dot.add_edge(pydot.Edge(src, dst))
    return dot.to_string()


# ---- files -------------------------------------------------------------------

PARSERS = {"deps": parse_deps, "dot": parse_dot_subset, "json": parse_json_graph}
WRITERS = {"deps": serialize_deps, "dot": to_dot, "json": serialize_json_graph}


def sniff_format(path, input_format: Optional[str] = None) -> str:
    if input_format is not None:
        if input_format not in FORMATS:
            raise FormatError(f"unknown input format {input_format!r}")
        return input_format
    suffix = Path(path).suffix.lower()
    if suffix not in FORMAT_BY_SUFFIX:
        raise FormatError(
            f"cannot infer format of {path}; use --input-format with one of {', '.join(FORMATS)}"
        )
    return FORMAT_BY_SUFFIX[suffix]


def load_graph(path, input_format: Optional[str] = None) -> DependencyGraph:
    fmt = sniff_format(path, input_format)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path} is not valid UTF-8 (byte {exc.start})") from exc
    graph = PARSERS[fmt](text)
    logger.info("Loaded %s (%s): %d nodes, %d edges", path, fmt, graph.node_count, graph.m)
    return graph


def save_graph(graph: DependencyGraph, path, output_format: Optional[str] = None) -> Path:
    fmt = sniff_format(path, output_format)
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(WRITERS[fmt](graph))
    return path
