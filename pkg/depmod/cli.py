#!/usr/bin/env python3
"""
🧭 DEPMOD - UNIFIED CLI
Stability, SDP and modularity analysis of package dependency graphs

Exit codes:
    0  success, no blocking findings
    1  usage, input or I/O error
    2  SDP violations found with --fail-on-violation
    3  internal self-check failed
"""

import argparse
import os
import sys

from . import __version__
from .community import suggest
from .console import colored_status, setup_logging
from .errors import ConfigError, DepModError, InvariantViolation, UnknownNode, UnknownPackage
from .example import run_walkthrough
from .formats import FORMATS, load_graph, save_graph, serialize_deps
from .metrics import (
    COUNT_CLASSES,
    COUNT_EDGES,
    DIRECTED,
    WORKED_EXAMPLE,
    UNDIRECTED,
    modularity_directed,
    modularity_undirected,
    package_report,
    render_rational,
)
from .moves import Move, evaluate_move
from .nullmodel import RewireConfig, resolve_workers, validate_null_probability, validate_proposition
from .report import build_report, emit_report, suggestion_section
from .scanner import SourceScanner, load_profile
from .sdp import Severity, check_sdp, remark_findings

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATIONS = 2
EXIT_INVARIANT = 3


class DepmodArgumentParser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for SDP findings."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def positive_int(value):
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def non_negative_int(value):
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {number}")
    return number


def create_parser():
    """Create the main argument parser with subcommands"""
    parser = DepmodArgumentParser(
        prog="depmod",
        description="🧭 Package stability and modularity analysis for dependency graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
    # Coupling, instability and modularity of the current packaging
    depmod metrics project.deps

    # Fail a CI job on Stable Dependencies Principle violations
    depmod sdp project.deps --fail-on-violation

    # Score moving a class to another package
    depmod move project.deps --class 1 --to C1

    # Greedy repackaging suggestion, best 5 moves
    depmod suggest project.deps --max-moves 5

    # Monte Carlo checks
    depmod validate --trials 10000 --seed 42
    depmod validate --graph project.deps --samples 10000

    # Extract a graph from a source tree
    depmod scan src/ --profile python --out project.deps
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="More logging on stderr (-v info, -vv debug)"
    )
    parser.add_argument("--log-file", help="Also log to a rotating file (default: $DEPMOD_LOG_FILE)")

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument("input", help="Graph file (.deps, .dot/.gv or .json)")
    graph_input.add_argument(
        "--input-format", choices=FORMATS, help="Override format detection by file extension"
    )

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument(
        "--format", choices=["table", "json"], default="table", help="Output format (default: table)"
    )

    counting = argparse.ArgumentParser(add_help=False)
    counting.add_argument(
        "--count",
        choices=[COUNT_CLASSES, COUNT_EDGES],
        default=COUNT_CLASSES,
        help="Count coupling by distinct classes or by crossing edges (default: classes)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands", metavar="COMMAND")

    subparsers.add_parser(
        "metrics",
        parents=[graph_input, output, counting],
        help="Per-package coupling, instability and modularity",
        description="Report Ca, Ce and instability per package, plus the modularity of the current packaging",
    )

    sdp_parser = subparsers.add_parser(
        "sdp",
        parents=[graph_input, output, counting],
        help="Check the Stable Dependencies Principle",
        description="List cross-package dependencies that point towards a less stable package",
    )
    sdp_parser.add_argument(
        "--fail-on-violation", action="store_true", help="Exit 2 when any violation is found"
    )
    sdp_parser.add_argument(
        "--remarks", action="store_true", help="Also classify each cross edge by its endpoint degrees"
    )

    move_parser = subparsers.add_parser(
        "move",
        parents=[graph_input, output],
        help="Evaluate moving one class to another package",
        description="Modularity before and after relocating a class",
    )
    move_parser.add_argument("--class", dest="node", required=True, help="Class to move")
    move_parser.add_argument("--to", dest="to_pkg", required=True, help="Destination package")
    move_parser.add_argument(
        "--convention",
        choices=["eq5", "paper", "both"],
        default="both",
        help="eq5: exact directed modularity change; paper: worked-example arithmetic (default: both)",
    )

    suggest_parser = subparsers.add_parser(
        "suggest",
        parents=[graph_input, output],
        help="Suggest a repackaging by greedy modularity maximization",
        description="Greedy community detection and the class moves that realize it",
    )
    suggest_parser.add_argument(
        "--max-moves", type=non_negative_int, help="Show at most N moves (default: all)"
    )

    validate_parser = subparsers.add_parser(
        "validate",
        parents=[output],
        help="Monte Carlo checks of the modularity claims",
        description="Sample degree tuples and degree-preserving rewires to check the modularity claims",
    )
    validate_parser.add_argument(
        "--trials", type=positive_int, default=1000, help="Proposition trials (default: 1000)"
    )
    validate_parser.add_argument(
        "--seed", type=non_negative_int, help="Random seed (default: $DEPMOD_SEED or 0)"
    )
    validate_parser.add_argument("--graph", help="Also check edge frequencies of rewires of this graph")
    validate_parser.add_argument(
        "--input-format", choices=FORMATS, help="Override format detection for --graph"
    )
    validate_parser.add_argument(
        "--samples", type=positive_int, default=1000, help="Rewired samples for --graph (default: 1000)"
    )
    validate_parser.add_argument(
        "--swap-multiplier", type=positive_int, default=10, help="Swap attempts per edge (default: 10)"
    )
    validate_parser.add_argument(
        "--jobs", type=non_negative_int, help="Worker processes, 0 = all CPUs (default: $DEPMOD_JOBS or 1)"
    )

    subparsers.add_parser(
        "example",
        help="Reproduce the golden worked example",
        description="Recompute the two embedded fixtures and compare against the golden values",
    )

    scan_parser = subparsers.add_parser(
        "scan",
        help="Extract a dependency graph from source files",
        description="Regex-based import scan of a source tree into the native .deps format",
    )
    scan_parser.add_argument("root", help="Source tree to scan")
    scan_parser.add_argument(
        "--profile", default="python", help="Shipped profile name (python, java, javascript) or profile JSON path"
    )
    scan_parser.add_argument("--out", help="Write the .deps file here (default: stdout)")

    return parser


def _err(text):
    print(colored_status("error", text, sys.stderr), file=sys.stderr)


def _print_json(report):
    sys.stdout.write(emit_report(report))


def _load(args):
    return load_graph(args.input, args.input_format)


def resolve_seed(seed):
    if seed is not None:
        return seed
    raw = os.getenv("DEPMOD_SEED", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"DEPMOD_SEED must be an integer, got {raw!r}")
    if value < 0:
        raise ConfigError(f"DEPMOD_SEED must be >= 0, got {value}")
    return value


def handle_metrics(args):
    """Handle metrics subcommand"""
    graph = _load(args)
    if args.format == "json":
        _print_json(build_report(graph, args.count))
        return EXIT_OK

    print("📦 PACKAGES")
    rows = package_report(graph, args.count)
    if not rows:
        print("  (no packages)")
    else:
        width = max(len("package"), *(len(r.package) for r in rows))
        print(f"  {'package':<{width}}  {'Ca':>4}  {'Ce':>4}  I")
        for r in rows:
            value = r.instability
            shown = render_rational(value.value) if value.is_defined else value.render()
            print(f"  {r.package:<{width}}  {r.ca:>4}  {r.ce:>4}  {shown}")

    print("\n📈 MODULARITY")
    if graph.m == 0:
        print("  n/a (graph has no edges)")
    else:
        print(f"  {DIRECTED + ':':<16} {modularity_directed(graph).render()}")
        print(f"  {UNDIRECTED + ':':<16} {modularity_undirected(graph).render()}")
    return EXIT_OK


def handle_sdp(args):
    """Handle sdp subcommand"""
    graph = _load(args)
    findings = check_sdp(graph, args.count)
    violations = [f for f in findings if f.severity is Severity.VIOLATION]
    remarks = remark_findings(graph) if args.remarks else None

    if args.format == "json":
        _print_json(build_report(graph, args.count, remarks=remarks))
    else:
        for f in findings:
            status = "error" if f.severity is Severity.VIOLATION else "warning"
            print(
                colored_status(
                    status,
                    f"{f.src} -> {f.dst}  {f.src_package} (I={f.src_instability.render()})"
                    f" -> {f.dst_package} (I={f.dst_instability.render()})  {f.severity.value}",
                )
            )
        if violations:
            print(f"{len(violations)} violation(s)")
        else:
            print(colored_status("good", "no violations"))
        if remarks is not None:
            print("\n🔍 DEGREE REMARKS")
            for r in remarks:
                c = r.condition
                print(f"  {r.src} -> {r.dst}  out/in {c.i_out}/{c.i_in} -> {c.j_out}/{c.j_in}  {c.verdict.value}")

    if violations and args.fail_on_violation:
        return EXIT_VIOLATIONS
    return EXIT_OK


def handle_move(args):
    """Handle move subcommand"""
    graph = _load(args)
    if not graph.has_node(args.node):
        raise UnknownNode(args.node)
    if not graph.has_package(args.to_pkg):
        raise UnknownPackage(args.to_pkg)
    move = Move(args.node, graph.package_of(args.node), args.to_pkg)
    evaluation = evaluate_move(graph, move)

    if args.format == "json":
        _print_json(build_report(graph, evaluations=[evaluation]))
        return EXIT_OK

    print(f"🔄 Move {move}")
    print(f"  q_before:  {render_rational(evaluation.q_before)}")
    print(f"  q_after:   {render_rational(evaluation.q_after)}")
    if args.convention in ("eq5", "both"):
        print(f"  delta_q ({DIRECTED}):   {render_rational(evaluation.delta_q)}")
    if args.convention in ("paper", "both"):
        print(f"  delta_q ({WORKED_EXAMPLE}):  {render_rational(evaluation.delta_q_paper)}")
        gained = ", ".join(f"{t.k_out}x{t.k_in}" for t in evaluation.gained) or "-"
        lost = ", ".join(f"{t.k_out}x{t.k_in}" for t in evaluation.lost) or "-"
        print(f"    gained terms: {gained}")
        print(f"    lost terms:   {lost}")
    print(f"  violations suppressed: {evaluation.violations_suppressed}")
    return EXIT_OK


def handle_suggest(args):
    """Handle suggest subcommand"""
    graph = _load(args)
    partition, report = suggest(graph)
    communities = [partition.communities()[label] for label in sorted(partition.communities())]

    if args.format == "json":
        section = suggestion_section(report, communities, args.max_moves)
        _print_json(build_report(graph, suggestions=section))
        return EXIT_OK

    print("🧩 SUGGESTED PARTITION")
    print(f"  initial Q: {render_rational(report.initial_q)}")
    print(f"  final Q:   {render_rational(report.final_q)}")
    print(f"  communities: {len(communities)}")
    for members in communities:
        print(f"    {', '.join(members)}")

    shown = report.evaluations if args.max_moves is None else report.evaluations[: args.max_moves]
    if args.max_moves == 0:
        return EXIT_OK
    print(f"\n💡 MOVES ({len(shown)} of {len(report.evaluations)})")
    if not shown:
        print(colored_status("good", "current packaging already matches the suggestion"))
    for e in shown:
        print(
            f"  {e.move}  delta_q={render_rational(e.delta_q)}"
            f"  delta_q_paper={render_rational(e.delta_q_paper)}"
            f"  suppresses={e.violations_suppressed}"
        )
    return EXIT_OK


def handle_validate(args):
    """Handle validate subcommand"""
    seed = resolve_seed(args.seed)
    progress = args.format == "table" and sys.stderr.isatty()
    summaries = []

    proposition = validate_proposition(RewireConfig(seed=seed, samples=args.trials), progress=progress)
    summaries.append(proposition)

    null_summary = None
    cfg = None
    if args.graph:
        graph = load_graph(args.graph, args.input_format)
        cfg = RewireConfig(swap_multiplier=args.swap_multiplier, seed=seed, samples=args.samples)
        null_summary = validate_null_probability(graph, cfg, workers=resolve_workers(args.jobs), progress=progress)
        summaries.append(null_summary)

    if args.format == "json":
        _print_json(build_report(validation=summaries))
    else:
        status = "good" if proposition.all_passed else "error"
        print(
            colored_status(
                status,
                f"proposition: {proposition.successes}/{proposition.trials} trials passed (seed {seed})",
            )
        )
        if proposition.min_margin is not None:
            print(f"  min margin: {render_rational(proposition.min_margin)}")
        if null_summary is not None:
            status = "good" if null_summary.all_passed else "warning"
            print(
                colored_status(
                    status,
                    f"null model: {null_summary.successes}/{null_summary.trials} pairs within"
                    f" {float(cfg.tolerance)} over {null_summary.samples} rewires",
                )
            )
            print(f"  max_abs_error: {render_rational(null_summary.max_abs_error)}")
            saturated = sum(1 for row in null_summary.table if row.saturated)
            if saturated:
                print(f"  saturated pairs (expected count > 1): {saturated}")

    return EXIT_OK if proposition.all_passed else EXIT_INVARIANT


def handle_example(args):
    """Handle example subcommand"""
    for line in run_walkthrough():
        print(line)
    return EXIT_OK


def handle_scan(args):
    """Handle scan subcommand"""
    profile = load_profile(args.profile)
    result = SourceScanner(profile).scan(args.root)
    summary = (
        f"{result.graph.node_count} nodes, {result.graph.m} edges, "
        f"{result.unresolved_total} unresolved imports, {len(result.warnings)} warnings"
    )
    if args.out:
        save_graph(result.graph, args.out, "deps")
        print(colored_status("good", f"wrote {args.out}: {summary}"))
    else:
        sys.stdout.write(serialize_deps(result.graph))
        print(summary, file=sys.stderr)
    return EXIT_OK


HANDLERS = {
    "metrics": handle_metrics,
    "sdp": handle_sdp,
    "move": handle_move,
    "suggest": handle_suggest,
    "validate": handle_validate,
    "example": handle_example,
    "scan": handle_scan,
}


def main(argv=None):
    """Main CLI entry point"""
    parser = create_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    setup_logging(args.verbose, args.log_file)
    try:
        return HANDLERS[args.command](args)
    except InvariantViolation as e:
        _err(f"Internal check failed: {e}")
        return EXIT_INVARIANT
    except DepModError as e:
        _err(str(e))
        return EXIT_ERROR
    except OSError as e:
        _err(f"I/O error: {e}")
        return EXIT_ERROR
    except KeyboardInterrupt:
        _err("Interrupted by user")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
