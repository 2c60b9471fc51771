"""
Exception hierarchy for depmod.

Every error raised by the library derives from DepModError so the CLI can
map failures to exit codes in one place.
"""


class DepModError(Exception):
    """Base exception for all depmod failures."""


# Graph model


class GraphError(DepModError):
    """Base exception for graph construction and lookup."""


class DuplicateNode(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"Node already exists: {node}")


class DuplicateEdge(GraphError):
    def __init__(self, src, dst):
        self.src = src
        self.dst = dst
        super().__init__(f"Edge already exists: {src} -> {dst}")


class MissingEdge(GraphError):
    def __init__(self, src, dst):
        self.src = src
        self.dst = dst
        super().__init__(f"Edge not found: {src} -> {dst}")


class SelfLoop(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"Self-loop not allowed: {node} -> {node}")


class UnknownNode(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"Node not found: {node}")


class UnknownPackage(GraphError):
    def __init__(self, package):
        self.package = package
        super().__init__(f"Package not found: {package}")


class EmptyGraph(GraphError):
    def __init__(self, message="Graph has no edges (m = 0)"):
        super().__init__(message)


class InvalidIdentifier(GraphError):
    def __init__(self, value, kind="identifier"):
        self.value = value
        super().__init__(f"Invalid {kind}: {value!r}")


# Analysis


class AnalysisError(DepModError):
    """Base exception for metric, move and sampling failures."""


class NotBorderNode(AnalysisError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"Not a border node: {node}")


class InvalidMove(AnalysisError):
    def __init__(self, move, reason):
        self.move = move
        self.reason = reason
        super().__init__(f"Invalid move {move}: {reason}")


class IncompletePartition(AnalysisError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        preview = ", ".join(self.missing[:5])
        more = "" if len(self.missing) <= 5 else f" (+{len(self.missing) - 5} more)"
        super().__init__(f"Partition does not label: {preview}{more}")


class TooFewEdges(AnalysisError):
    def __init__(self, m):
        self.m = m
        super().__init__(f"Rewiring needs at least 2 edges, graph has {m}")


class ConfigError(AnalysisError):
    """Raised when a configuration value is out of range."""


# Formats and ingestion


class FormatError(DepModError):
    """Base exception for parsing, scanning and report serialization."""


class DepsSyntaxError(FormatError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class ParseContextError(FormatError):
    """A graph-core error raised while applying a document line."""

    def __init__(self, line, error):
        self.line = line
        self.error = error
        super().__init__(f"line {line}: {error}")


class UnsupportedDot(FormatError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class MissingPackage(FormatError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"No package attribute or cluster for node: {node}")


class BadProfile(FormatError):
    """Raised when a scan profile cannot be loaded or compiled."""


class ScanIoError(FormatError):
    """Raised when the scan root cannot be read."""


class ReportSchemaError(FormatError):
    """Raised when a generated report does not match the shipped schema."""


class InvariantViolation(DepModError):
    """Raised when an internal self-check fails."""
