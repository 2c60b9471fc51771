"""
Shared fixtures and oracles for the test suite.
"""

from fractions import Fraction

import numpy as np

from depmod.example import FIXTURES
from depmod.formats import parse_deps
from depmod.graph import GraphBuilder, Partition

FIXTURE_A = FIXTURES["a"]
FIXTURE_B = FIXTURES["b"]

CYCLE3 = """\
node 1 P
node 2 P
node 3 P
edge 1 2
edge 2 3
edge 3 1
"""

TWO_CYCLES = """\
node 1 A
node 2 A
node 3 A
node 4 B
node 5 B
node 6 B
edge 1 2
edge 2 3
edge 3 1
edge 4 5
edge 5 6
edge 6 4
"""

TWO_CYCLES_ONE_PACKAGE = TWO_CYCLES.replace(" B\n", " A\n")

BRIDGED_CYCLES = TWO_CYCLES + "edge 3 4\n"

TWO_PAIRS = """\
node 1 P
node 2 P
node 3 Q
node 4 Q
edge 1 2
edge 2 1
edge 2 3
edge 3 4
edge 4 3
"""

OUT_STAR = """\
node 1 P
node 2 Q
node 3 Q
node 4 Q
edge 1 2
edge 1 3
edge 1 4
"""


def load(text):
    return parse_deps(text)


def random_digraph(seed, n_nodes, p=0.3, n_packages=3):
    """Seeded simple digraph with at least one edge and random package labels."""
    rng = np.random.default_rng(seed)
    builder = GraphBuilder()
    nodes = [f"n{i}" for i in range(n_nodes)]
    for node in nodes:
        builder.add_node(node, f"P{int(rng.integers(n_packages))}")
    added = 0
    for src in nodes:
        for dst in nodes:
            if src != dst and rng.random() < p:
                builder.add_edge(src, dst)
                added += 1
    if not added:
        builder.add_edge(nodes[0], nodes[1])
    return builder.build()


def random_partition(graph, seed, n_labels=3):
    rng = np.random.default_rng(seed)
    return Partition({n: f"c{int(rng.integers(n_labels))}" for n in graph.nodes})


def naive_directed_q(graph, partition):
    """Plain double sum over every ordered pair, including i = j."""
    m = graph.m
    total = Fraction(0)
    for i in graph.nodes:
        for j in graph.nodes:
            if partition[i] != partition[j]:
                continue
            a_ij = 1 if graph.has_edge(i, j) else 0
            total += a_ij - Fraction(graph.out_degree(i) * graph.in_degree(j), m)
    return total / m


def naive_undirected_q(graph, partition):
    """Double sum on the symmetrized graph."""
    pairs = {(min(s, d), max(s, d)) for s, d in graph.edges()}
    m = len(pairs)
    degree = {n: 0 for n in graph.nodes}
    for v, w in pairs:
        degree[v] += 1
        degree[w] += 1
    total = Fraction(0)
    for v in graph.nodes:
        for w in graph.nodes:
            if partition[v] != partition[w]:
                continue
            a_vw = 1 if (min(v, w), max(v, w)) in pairs else 0
            total += a_vw - Fraction(degree[v] * degree[w], 2 * m)
    return total / (2 * m)


def set_partitions(items):
    """Every partition of items, as lists of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in set_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def best_partition_q(graph, modularity):
    """Brute-force maximum of modularity(graph, partition) over all partitions."""
    best = None
    for blocks in set_partitions(graph.nodes):
        labels = {n: str(k) for k, block in enumerate(blocks) for n in block}
        q = modularity(graph, Partition(labels)).value
        if best is None or q > best:
            best = q
    return best
