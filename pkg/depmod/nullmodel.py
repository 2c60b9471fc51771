"""
🎲 Degree-preserving null model and Monte Carlo checks.

rewire performs double edge swaps: two edges (a, b), (c, d) become
(a, d), (c, b) unless that creates a self-loop or a duplicate edge, so
every in- and out-degree is preserved and the graph stays simple.

Every sample and trial seeds its own generator with seed + index, so
results do not depend on how work is split between workers.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import psutil

from .console import HAS_UI_LIBS, tqdm
from .errors import ConfigError, InvariantViolation, TooFewEdges
from .graph import DependencyGraph
from .metrics import directed_null_expectation
from .moves import Ordering, contribution, proposition_compare
from .sdp import RemarkCondition, Verdict

logger = logging.getLogger("depmod.nullmodel")

PROPOSITION = "proposition"
NULL_PROBABILITY = "null-probability"

# sampling ranges for the proposition check
M_RANGE = (5, 100)
MAX_DEGREE = 20


@dataclass(frozen=True)
class RewireConfig:
    swap_multiplier: int = 10
    seed: int = 0
    samples: int = 1000
    tolerance: Fraction = Fraction(1, 20)

    def __post_init__(self):
        if self.swap_multiplier < 1:
            raise ConfigError(f"swap_multiplier must be >= 1, got {self.swap_multiplier}")
        if self.samples < 1:
            raise ConfigError(f"samples must be >= 1, got {self.samples}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if not 0 < self.tolerance <= 1:
            raise ConfigError(f"tolerance must be in (0, 1], got {self.tolerance}")


@dataclass(frozen=True)
class PairFrequency:
    src: str
    dst: str
    observed: Fraction
    predicted: Fraction
    saturated: bool

    @property
    def abs_error(self) -> Fraction:
        return abs(self.observed - self.predicted)


@dataclass
class ValidationSummary:
    kind: str
    trials: int
    successes: int
    seed: int
    samples: int
    max_abs_error: Optional[Fraction] = None
    min_margin: Optional[Fraction] = None
    table: List[PairFrequency] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return self.trials - self.successes

    @property
    def all_passed(self) -> bool:
        return self.successes == self.trials


def resolve_workers(jobs: Optional[int]) -> int:
    """jobs=0 means one worker per logical CPU."""
    if jobs is None:
        raw = os.getenv("DEPMOD_JOBS", "1")
        try:
            jobs = int(raw)
        except ValueError:
            raise ConfigError(f"DEPMOD_JOBS must be an integer, got {raw!r}") from None
        if jobs < 0:
            raise ConfigError(f"DEPMOD_JOBS must be >= 0, got {jobs}")
    if jobs < 0:
        raise ConfigError(f"jobs must be >= 0, got {jobs}")
    if jobs == 0:
        return psutil.cpu_count(logical=True) or 1
    return jobs


def _swap_edges(edges: List[Tuple], attempts: int, rng) -> int:
    """Apply up to `attempts` double edge swaps to `edges` in place."""
    present = set(edges)
    accepted = 0
    for x, y in rng.integers(0, len(edges), size=(attempts, 2)).tolist():
        if x == y:
            continue
        a, b = edges[x]
        c, d = edges[y]
        if a == d or c == b or (a, d) in present or (c, b) in present:
            continue
        present.difference_update(((a, b), (c, d)))
        present.update(((a, d), (c, b)))
        edges[x] = (a, d)
        edges[y] = (c, b)
        accepted += 1
    return accepted


def rewire(graph: DependencyGraph, cfg: RewireConfig, rng=None) -> DependencyGraph:
    """Degree-preserving randomization of graph's edges; packages carried over."""
    if graph.m < 2:
        raise TooFewEdges(graph.m)
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    edges = graph.edges()
    attempts = cfg.swap_multiplier * graph.m
    accepted = _swap_edges(edges, attempts, rng)
    logger.debug("Rewire: %d/%d swaps accepted", accepted, attempts)
    return graph.with_edges(edges)


def _count_chunk(edges: Sequence[Tuple[int, int]], n: int, attempts: int, seed: int, start: int, stop: int):
    counts = np.zeros((n, n), dtype=np.int64)
    for sample in range(start, stop):
        rng = np.random.default_rng(seed + sample)
        current = list(edges)
        _swap_edges(current, attempts, rng)
        src, dst = zip(*current)
        counts[list(src), list(dst)] += 1
    return counts


def _chunks(samples: int, pieces: int) -> List[Tuple[int, int]]:
    size = max(1, math.ceil(samples / pieces))
    return [(start, min(start + size, samples)) for start in range(0, samples, size)]


def validate_null_probability(
    graph: DependencyGraph,
    cfg: RewireConfig,
    workers: int = 1,
    progress: bool = False,
) -> ValidationSummary:
    """Observed edge frequencies over cfg.samples rewires against k_i^out k_j^in / m.

    Pairs whose predicted value exceeds 1 are flagged saturated and left out
    of max_abs_error. Self pairs are skipped: the model forbids self-loops.
    """
    if graph.m < 2:
        raise TooFewEdges(graph.m)
    nodes = list(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    edges = [(index[s], index[d]) for s, d in graph.edges()]
    attempts = cfg.swap_multiplier * graph.m

    chunks = _chunks(cfg.samples, max(1, workers) * 4)
    counts = np.zeros((len(nodes), len(nodes)), dtype=np.int64)
    bar = tqdm(total=cfg.samples, desc="🎲 Rewiring", unit="graph") if progress and HAS_UI_LIBS else None
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_count_chunk, edges, len(nodes), attempts, cfg.seed, start, stop)
                for start, stop in chunks
            ]
            for (start, stop), future in zip(chunks, futures):
                counts += future.result()
                if bar is not None:
                    bar.update(stop - start)
    else:
        for start, stop in chunks:
            counts += _count_chunk(edges, len(nodes), attempts, cfg.seed, start, stop)
            if bar is not None:
                bar.update(stop - start)
    if bar is not None:
        bar.close()

    table = []
    for i, src in enumerate(nodes):
        k_out = graph.out_degree(src)
        for j, dst in enumerate(nodes):
            if i == j:
                continue
            predicted = directed_null_expectation(k_out, graph.in_degree(dst), graph.m)
            observed = Fraction(int(counts[i, j]), cfg.samples)
            table.append(PairFrequency(src, dst, observed, predicted, predicted > 1))

    checked = [row for row in table if not row.saturated]
    max_error = max((row.abs_error for row in checked), default=Fraction(0))
    successes = sum(1 for row in checked if row.abs_error <= cfg.tolerance)
    saturated = len(table) - len(checked)
    if saturated:
        logger.warning("%d pairs have expected edge count above 1 (saturated)", saturated)
    logger.info("Null model: %d/%d pairs within %s, max error %s", successes, len(checked), cfg.tolerance, float(max_error))
    return ValidationSummary(
        kind=NULL_PROBABILITY,
        trials=len(checked),
        successes=successes,
        seed=cfg.seed,
        samples=cfg.samples,
        max_abs_error=max_error,
        table=table,
    )


def sample_remark1_degrees(rng) -> Tuple[int, int, int, int, int]:
    """(m, k_i_out, k_i_in, k_j_out, k_j_in) with k_i_out > k_i_in and k_j_out < k_j_in."""
    m = int(rng.integers(M_RANGE[0], M_RANGE[1] + 1))
    k_i_in = int(rng.integers(1, MAX_DEGREE))
    k_i_out = int(rng.integers(k_i_in + 1, MAX_DEGREE + 1))
    k_j_out = int(rng.integers(1, MAX_DEGREE))
    k_j_in = int(rng.integers(k_j_out + 1, MAX_DEGREE + 1))
    return m, k_i_out, k_i_in, k_j_out, k_j_in


def validate_proposition(cfg: RewireConfig, progress: bool = False) -> ValidationSummary:
    """Check that hiding a violating dependency always scores higher, over cfg.samples trials."""
    successes = 0
    min_margin = None
    trials = range(cfg.samples)
    if progress and HAS_UI_LIBS:
        trials = tqdm(trials, desc="🧪 Proposition", unit="trial")
    for trial in trials:
        rng = np.random.default_rng(cfg.seed + trial)
        m, k_i_out, k_i_in, k_j_out, k_j_in = sample_remark1_degrees(rng)

        condition = RemarkCondition.of(k_i_out, k_i_in, k_j_out, k_j_in)
        if condition.verdict is not Verdict.REMARK1 or condition.exchanged().verdict is not Verdict.REMARK2:
            raise InvariantViolation(f"sampled degrees do not satisfy the remark conditions: {condition}")

        # barred degrees: k_i_out -> k_j_out, k_j_in -> k_i_in
        outcome = proposition_compare((k_i_out, k_j_in), (k_j_out, k_i_in), m)
        margin = contribution(k_j_out, k_i_in, m) - contribution(k_i_out, k_j_in, m)
        min_margin = margin if min_margin is None else min(min_margin, margin)
        if outcome is Ordering.VIOLATING_LARGER:
            successes += 1
        else:
            logger.error(
                "Trial %d failed: m=%d degrees=(%d,%d;%d,%d) outcome=%s",
                trial, m, k_i_out, k_i_in, k_j_out, k_j_in, outcome.value,
            )
    logger.info("Proposition: %d/%d trials", successes, cfg.samples)
    return ValidationSummary(
        kind=PROPOSITION,
        trials=cfg.samples,
        successes=successes,
        seed=cfg.seed,
        samples=cfg.samples,
        min_margin=min_margin,
    )
