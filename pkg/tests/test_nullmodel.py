#!/usr/bin/env python3
"""
🧪 UNIT TESTS FOR THE DEGREE-PRESERVING NULL MODEL
"""

import os
import unittest
from fractions import Fraction
from unittest.mock import patch

import numpy as np

from depmod.errors import ConfigError, TooFewEdges
from depmod.graph import DependencyGraph, GraphBuilder
from depmod.nullmodel import (
    NULL_PROBABILITY,
    PROPOSITION,
    RewireConfig,
    _chunks,
    _count_chunk,
    resolve_workers,
    rewire,
    sample_remark1_degrees,
    validate_null_probability,
    validate_proposition,
)
from depmod.sdp import Verdict, classify_degrees

from tests.helpers import CYCLE3, load, random_digraph


def regular_bipartite():
    """Four sources, four sinks, every source depends on two sinks."""
    builder = GraphBuilder()
    for i in range(4):
        builder.add_node(f"s{i}", "S")
        builder.add_node(f"t{i}", "T")
    for i in range(4):
        builder.add_edge(f"s{i}", f"t{i}")
        builder.add_edge(f"s{i}", f"t{(i + 1) % 4}")
    return builder.build()


class TestRewireConfig(unittest.TestCase):

    def test_defaults(self):
        cfg = RewireConfig()
        self.assertEqual(cfg.swap_multiplier, 10)
        self.assertEqual(cfg.samples, 1000)
        self.assertEqual(cfg.tolerance, Fraction(1, 20))

    def test_rejects_bad_values(self):
        for kwargs in ({"swap_multiplier": 0}, {"samples": 0}, {"seed": -1}, {"tolerance": Fraction(0)}):
            with self.assertRaises(ConfigError):
                RewireConfig(**kwargs)

    @patch("depmod.nullmodel.psutil.cpu_count", return_value=8)
    def test_resolve_workers(self, mock_cpu_count):
        """jobs=0 means one worker per CPU; DEPMOD_JOBS is the fallback"""
        self.assertEqual(resolve_workers(0), 8)
        self.assertEqual(resolve_workers(3), 3)
        with patch.dict(os.environ, {"DEPMOD_JOBS": "2"}):
            self.assertEqual(resolve_workers(None), 2)
        with self.assertRaises(ConfigError):
            resolve_workers(-1)

    def test_bad_jobs_environment(self):
        for raw in ("four", "-2", ""):
            with patch.dict(os.environ, {"DEPMOD_JOBS": raw}):
                with self.assertRaises(ConfigError):
                    resolve_workers(None)


class TestRewire(unittest.TestCase):

    def test_degrees_preserved(self):
        """1,000 seeded rewires keep every degree and stay simple"""
        graph = random_digraph(7, 12, p=0.2)
        out_before = {n: graph.out_degree(n) for n in graph.nodes}
        in_before = {n: graph.in_degree(n) for n in graph.nodes}
        changed = 0
        for seed in range(1000):
            rewired = rewire(graph, RewireConfig(seed=seed))
            self.assertEqual({n: rewired.out_degree(n) for n in rewired.nodes}, out_before)
            self.assertEqual({n: rewired.in_degree(n) for n in rewired.nodes}, in_before)
            self.assertEqual(rewired.assignment, graph.assignment)
            self.assertFalse(any(src == dst for src, dst in rewired.edges()))
            self.assertEqual(len(set(rewired.edges())), rewired.m)
            changed += rewired != graph
        self.assertGreater(changed, 900)

    def test_seeded_rewire_is_reproducible(self):
        graph = random_digraph(8, 10)
        self.assertEqual(rewire(graph, RewireConfig(seed=5)), rewire(graph, RewireConfig(seed=5)))

    def test_too_few_edges(self):
        with self.assertRaises(TooFewEdges):
            rewire(DependencyGraph({"a": "P", "b": "P"}, [("a", "b")]), RewireConfig())
        with self.assertRaises(TooFewEdges):
            rewire(DependencyGraph(), RewireConfig())

    def test_frozen_graphs_unchanged(self):
        """No legal swap exists in a 3-cycle or a mutual pair"""
        cycle = load(CYCLE3)
        self.assertEqual(rewire(cycle, RewireConfig(seed=1)), cycle)
        mutual = DependencyGraph({"a": "P", "b": "Q"}, [("a", "b"), ("b", "a")])
        self.assertEqual(rewire(mutual, RewireConfig(seed=1)), mutual)

    def test_explicit_generator(self):
        graph = random_digraph(9, 10)
        first = rewire(graph, RewireConfig(), rng=np.random.default_rng(11))
        second = rewire(graph, RewireConfig(), rng=np.random.default_rng(11))
        self.assertEqual(first, second)


class TestNullProbability(unittest.TestCase):

    def test_regular_bipartite_within_tolerance(self):
        """Observed edge frequencies match k_out * k_in / m within 0.05"""
        summary = validate_null_probability(regular_bipartite(), RewireConfig(seed=3, samples=10000))
        self.assertEqual(summary.kind, NULL_PROBABILITY)
        self.assertTrue(summary.all_passed)
        self.assertLessEqual(summary.max_abs_error, Fraction(1, 20))
        pairs = {(row.src, row.dst): row for row in summary.table}
        self.assertEqual(pairs[("s0", "t2")].predicted, Fraction(1, 2))
        self.assertEqual(pairs[("t0", "s0")].observed, 0)

    def test_random_ten_node_graph_records_simple_graph_bias(self):
        """On a seeded 10-node random graph most pairs land within 0.05, not all.

        Swaps never create self-loops or parallel edges, so pairs between
        high-degree classes sit below k_out * k_in / m and the mass moves to
        the rest. The remaining error is that bias, not sampling noise.
        """
        graph = random_digraph(5, 10, p=0.2)
        summary = validate_null_probability(graph, RewireConfig(seed=1, samples=10000))
        self.assertEqual(graph.node_count, 10)
        self.assertEqual(summary.trials, 90)
        self.assertGreaterEqual(summary.successes, 75)
        self.assertFalse(summary.all_passed)
        self.assertGreater(summary.max_abs_error, Fraction(1, 20))
        self.assertLess(summary.max_abs_error, Fraction(1, 8))

    def test_observed_mass_exceeds_prediction_by_self_pairs(self):
        """Every sample has m off-diagonal edges; the prediction loses its self terms"""
        graph = random_digraph(5, 10, p=0.2)
        summary = validate_null_probability(graph, RewireConfig(seed=2, samples=200))
        observed = sum(row.observed for row in summary.table)
        predicted = sum(row.predicted for row in summary.table)
        self_terms = sum(Fraction(graph.out_degree(n) * graph.in_degree(n), graph.m) for n in graph.nodes)
        self.assertEqual(observed, graph.m)
        self.assertEqual(predicted, graph.m - self_terms)

    def test_error_shrinks_with_samples(self):
        graph = regular_bipartite()
        small = validate_null_probability(graph, RewireConfig(seed=9, samples=1000))
        large = validate_null_probability(graph, RewireConfig(seed=9, samples=10000))
        self.assertLess(large.max_abs_error, small.max_abs_error)

    def test_cycle_is_frozen(self):
        """The 3-cycle never moves, so its frequencies are its adjacency"""
        summary = validate_null_probability(load(CYCLE3), RewireConfig(samples=200))
        self.assertEqual(summary.trials, 6)
        self.assertEqual(summary.successes, 0)
        self.assertEqual(summary.max_abs_error, Fraction(2, 3))
        observed = {(row.src, row.dst): row.observed for row in summary.table}
        self.assertEqual(observed[("1", "2")], 1)
        self.assertEqual(observed[("2", "1")], 0)

    def test_saturated_pairs_flagged(self):
        """Pairs with expected count above 1 are excluded from the check"""
        graph = DependencyGraph(
            {"h": "P", "x": "P", "y": "P", "z": "P", "w": "P"},
            [("h", "x"), ("h", "y"), ("h", "z"), ("x", "y"), ("z", "y"), ("w", "y")],
        )
        summary = validate_null_probability(graph, RewireConfig(samples=50))
        saturated = {(row.src, row.dst) for row in summary.table if row.saturated}
        self.assertIn(("h", "y"), saturated)
        self.assertEqual(summary.trials, len(summary.table) - len(saturated))

    def test_chunking_does_not_change_counts(self):
        """Per-sample seeding makes any split of the samples sum to the same counts"""
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        whole = _count_chunk(edges, 4, 50, 17, 0, 40)
        parts = sum(_count_chunk(edges, 4, 50, 17, start, stop) for start, stop in _chunks(40, 3))
        np.testing.assert_array_equal(whole, parts)

    def test_chunks_cover_range(self):
        self.assertEqual(_chunks(10, 3), [(0, 4), (4, 8), (8, 10)])
        self.assertEqual(_chunks(2, 8), [(0, 1), (1, 2)])


class TestPropositionLab(unittest.TestCase):

    def test_all_trials_pass_for_five_seeds(self):
        for seed in (0, 1, 7, 42, 2024):
            summary = validate_proposition(RewireConfig(seed=seed, samples=10000))
            self.assertEqual(summary.kind, PROPOSITION)
            self.assertEqual((summary.successes, summary.trials), (10000, 10000))
            self.assertGreater(summary.min_margin, 0)

    def test_sampled_degrees_satisfy_remark1(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            m, i_out, i_in, j_out, j_in = sample_remark1_degrees(rng)
            self.assertTrue(5 <= m <= 100)
            self.assertTrue(max(i_out, i_in, j_out, j_in) <= 20)
            self.assertIs(classify_degrees(i_out, i_in, j_out, j_in), Verdict.REMARK1)


if __name__ == "__main__":
    unittest.main()
