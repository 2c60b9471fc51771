#!/usr/bin/env python3
"""
🧪 UNIT TESTS FOR THE COMMAND-LINE INTERFACE
"""

import io
import json
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from depmod.cli import EXIT_ERROR, EXIT_INVARIANT, EXIT_OK, EXIT_VIOLATIONS, create_parser, main
from depmod.example import FIXTURES
from depmod.report import validate_report

from tests.helpers import CYCLE3, FIXTURE_A, FIXTURE_B, TWO_CYCLES_ONE_PACKAGE


class CliTestCase(unittest.TestCase):

    def setUp(self):
        """Set up a scratch directory with the fixtures"""
        self.temp_dir = Path(tempfile.mkdtemp())
        self.graph_a = self.write("a.deps", FIXTURE_A)
        self.graph_b = self.write("b.deps", FIXTURE_B)

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write(self, name, text):
        path = self.temp_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return str(path)

    def run_cli(self, *argv):
        """Run main() and return (exit code, stdout, stderr)"""
        with patch("sys.stdout", new_callable=io.StringIO) as out, patch(
            "sys.stderr", new_callable=io.StringIO
        ) as err:
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestParser(CliTestCase):

    def test_no_command(self):
        code, _, err = self.run_cli()
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("usage", err)

    def test_usage_errors_exit_1(self):
        """Argument errors exit 1, leaving 2 for SDP findings"""
        with patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                main(["validate", "--trials", "0"])
        self.assertEqual(ctx.exception.code, EXIT_ERROR)

    def test_defaults(self):
        args = create_parser().parse_args(["move", "x.deps", "--class", "1", "--to", "C1"])
        self.assertEqual((args.node, args.to_pkg, args.convention, args.format), ("1", "C1", "both", "table"))


class TestMetricsAndSdp(CliTestCase):

    def test_metrics_table(self):
        code, out, _ = self.run_cli("metrics", self.graph_b)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("📦 PACKAGES", out)
        self.assertIn("1/5 (0.2)", out)
        self.assertIn("4/5 (0.8)", out)
        self.assertIn("1/25 (0.04)", out)

    def test_metrics_json(self):
        code, out, _ = self.run_cli("metrics", self.graph_b, "--format", "json")
        self.assertEqual(code, EXIT_OK)
        report = validate_report(json.loads(out))
        self.assertEqual(report["modularity"]["directed"], "1/25")

    def test_metrics_empty_graph(self):
        code, out, _ = self.run_cli("metrics", self.write("empty.deps", ""))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("n/a (graph has no edges)", out)

    def test_metrics_missing_file(self):
        code, _, err = self.run_cli("metrics", str(self.temp_dir / "absent.deps"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("I/O error", err)

    def test_metrics_undecodable_file(self):
        path = self.temp_dir / "binary.deps"
        path.write_bytes(b"\xff\xfe")
        code, _, err = self.run_cli("metrics", str(path))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("not valid UTF-8", err)

    def test_metrics_syntax_error(self):
        code, _, err = self.run_cli("metrics", self.write("bad.deps", "node a\n"))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("line 1", err)

    def test_sdp_fail_on_violation(self):
        code, out, _ = self.run_cli("sdp", self.graph_b, "--fail-on-violation")
        self.assertEqual(code, EXIT_VIOLATIONS)
        self.assertIn("1 -> 5", out)
        self.assertIn("1 violation(s)", out)

    def test_sdp_reports_without_failing(self):
        code, _, _ = self.run_cli("sdp", self.graph_b)
        self.assertEqual(code, EXIT_OK)

    def test_sdp_clean_graph(self):
        code, out, _ = self.run_cli("sdp", self.graph_a, "--fail-on-violation", "--remarks")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("no violations", out)
        self.assertIn("DEGREE REMARKS", out)


class TestMoveAndSuggest(CliTestCase):

    def test_move_condition_b(self):
        code, out, _ = self.run_cli("move", self.graph_b, "--class", "1", "--to", "C1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("57/20 (2.85)", out)
        self.assertIn("1/5 (0.2)", out)
        self.assertIn("violations suppressed: 1", out)

    def test_move_condition_a(self):
        code, out, _ = self.run_cli("move", self.graph_a, "--class", "1", "--to", "C1", "--convention", "paper")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("33/20 (1.65)", out)
        self.assertNotIn("delta_q (directed)", out)

    def test_move_directed_convention_only(self):
        code, out, _ = self.run_cli("move", self.graph_b, "--class", "1", "--to", "C1", "--convention", "eq5")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("delta_q (directed)", out)
        self.assertNotIn("57/20", out)

    def test_move_rejects_unknown_convention(self):
        with patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                main(["move", self.graph_b, "--class", "1", "--to", "C1", "--convention", "worked"])
        self.assertEqual(ctx.exception.code, EXIT_ERROR)

    def test_move_errors(self):
        for argv in (["--class", "1", "--to", "C2"], ["--class", "1", "--to", "C9"], ["--class", "99", "--to", "C1"]):
            code, _, _ = self.run_cli("move", self.graph_b, *argv)
            self.assertEqual(code, EXIT_ERROR, argv)

    def test_suggest_splits_package(self):
        code, out, _ = self.run_cli("suggest", self.write("one.deps", TWO_CYCLES_ONE_PACKAGE))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("final Q:   1/2 (0.5)", out)
        self.assertIn("MOVES (3 of 3)", out)

    def test_suggest_max_moves_zero(self):
        code, out, _ = self.run_cli("suggest", self.graph_b, "--max-moves", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("SUGGESTED PARTITION", out)
        self.assertNotIn("MOVES", out)

    def test_suggest_json(self):
        code, out, _ = self.run_cli("suggest", self.graph_b, "--format", "json")
        self.assertEqual(code, EXIT_OK)
        report = validate_report(json.loads(out))
        self.assertEqual(report["suggestions"]["moves"][0]["delta_q_paper"], "57/20")


class TestValidate(CliTestCase):

    def test_proposition(self):
        code, out, _ = self.run_cli("validate", "--trials", "10000", "--seed", "42")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("10000/10000", out)
        self.assertIn("seed 42", out)

    def test_seed_from_environment(self):
        with patch.dict("os.environ", {"DEPMOD_SEED": "7"}):
            _, out, _ = self.run_cli("validate", "--trials", "10")
        self.assertIn("seed 7", out)
        with patch.dict("os.environ", {"DEPMOD_SEED": "seven"}):
            code, _, _ = self.run_cli("validate", "--trials", "10")
        self.assertEqual(code, EXIT_ERROR)

    def test_json_output(self):
        code, out, _ = self.run_cli("validate", "--trials", "20", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        report = validate_report(json.loads(out))
        self.assertEqual(report["validation"][0]["successes"], 20)

    def test_null_model_miss_is_a_warning(self):
        """A frozen graph misses the prediction but does not fail the run"""
        cycle = self.write("cycle.deps", CYCLE3)
        code, out, _ = self.run_cli("validate", "--trials", "10", "--graph", cycle, "--samples", "50")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("null model: 0/6", out)
        self.assertIn("2/3", out)

    def test_bad_jobs_environment(self):
        cycle = self.write("cycle.deps", CYCLE3)
        with patch.dict("os.environ", {"DEPMOD_JOBS": "four"}):
            code, _, err = self.run_cli("validate", "--trials", "10", "--graph", cycle, "--samples", "20")
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("DEPMOD_JOBS", err)

    def test_too_few_edges(self):
        single = self.write("single.deps", "node a P\nnode b P\nedge a b\n")
        code, _, _ = self.run_cli("validate", "--trials", "10", "--graph", single)
        self.assertEqual(code, EXIT_ERROR)


class TestExample(CliTestCase):

    def test_example(self):
        code, out, _ = self.run_cli("example")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("57/20 (2.85)", out)
        self.assertIn("33/20 (1.65)", out)

    def test_tampered_fixture_exits_3(self):
        with patch.dict(FIXTURES, {"b": FIXTURE_A}):
            code, _, err = self.run_cli("example")
        self.assertEqual(code, EXIT_INVARIANT)
        self.assertIn("Internal check failed", err)


class TestScan(CliTestCase):

    def test_scan_to_file(self):
        self.write("src/a.py", "import b\n")
        self.write("src/b.py", "")
        out_file = self.temp_dir / "out.deps"
        code, out, _ = self.run_cli("scan", str(self.temp_dir / "src"), "--out", str(out_file))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out_file.read_text(encoding="utf-8"), "node a _root\nnode b _root\nedge a b\n")
        self.assertIn("2 nodes, 1 edges", out)

    def test_scan_empty_tree_to_stdout(self):
        (self.temp_dir / "empty").mkdir()
        code, out, err = self.run_cli("scan", str(self.temp_dir / "empty"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "")
        self.assertIn("0 nodes, 0 edges", err)

    def test_scan_errors(self):
        code, _, _ = self.run_cli("scan", str(self.temp_dir), "--profile", "cobol")
        self.assertEqual(code, EXIT_ERROR)
        code, _, _ = self.run_cli("scan", str(self.temp_dir / "absent"))
        self.assertEqual(code, EXIT_ERROR)


if __name__ == "__main__":
    unittest.main()
