"""
🧭 DEPMOD PACKAGE
Package stability, Stable Dependencies Principle checks and modularity of dependency graphs
"""

__version__ = "0.1.0"
__description__ = "Stability and modularity analysis of package dependency graphs"

# Import main entry points for easy access
from .community import greedy_partition, partition_to_moves, suggest
from .errors import DepModError
from .formats import load_graph, parse_deps, parse_dot_subset, save_graph, serialize_deps
from .graph import DependencyGraph, GraphBuilder, Partition
from .metrics import instability, modularity_directed, modularity_undirected, package_report
from .moves import Move, delta_q_paper_convention, evaluate_move, proposition_compare, rank_moves
from .nullmodel import RewireConfig, rewire, validate_null_probability, validate_proposition
from .scanner import ScanProfile, load_profile, scan_sources
from .sdp import check_sdp, classify_remark

__all__ = [
    "DependencyGraph",
    "DepModError",
    "GraphBuilder",
    "Move",
    "Partition",
    "RewireConfig",
    "ScanProfile",
    "check_sdp",
    "classify_remark",
    "delta_q_paper_convention",
    "evaluate_move",
    "greedy_partition",
    "instability",
    "load_graph",
    "load_profile",
    "modularity_directed",
    "modularity_undirected",
    "package_report",
    "parse_deps",
    "parse_dot_subset",
    "partition_to_moves",
    "proposition_compare",
    "rank_moves",
    "rewire",
    "save_graph",
    "scan_sources",
    "serialize_deps",
    "suggest",
    "validate_null_probability",
    "validate_proposition",
    "__version__",
]
