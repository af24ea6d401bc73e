"""Shared generators for the randomized suites.

The random family used throughout: up to 7 vertices, nonzero integer weights
in [-3, 3], loop probability 0.3, off-diagonal edge probability ~0.35.
Structural subsets are found by rejection sampling with a guaranteed
fallback (any subset of size n-1 is structural when weights are constants).
"""

from __future__ import annotations

import random

from isoreduce import build
from isoreduce.graph import WeightedDigraph
from isoreduce.structural import is_structural

WEIGHT_POOL = [-3, -2, -1, 1, 2, 3]


def random_graph(rng: random.Random, min_n: int = 2, max_n: int = 7,
                 edge_p: float = 0.35, loop_p: float = 0.3,
                 loopless: bool = False) -> WeightedDigraph:
    n = rng.randint(min_n, max_n)
    labels = [f"v{i + 1}" for i in range(n)]
    edges = []
    for u in labels:
        for v in labels:
            if u == v:
                if not loopless and rng.random() < loop_p:
                    edges.append((u, v, rng.choice(WEIGHT_POOL)))
            elif rng.random() < edge_p:
                edges.append((u, v, rng.choice(WEIGHT_POOL)))
    return build(labels, edges)


def random_all_one_graph(rng: random.Random, min_n: int = 2, max_n: int = 7,
                         edge_p: float = 0.35, loop_p: float = 0.3) -> WeightedDigraph:
    g = random_graph(rng, min_n, max_n, edge_p, loop_p)
    return build(g.vertices, [(u, v, 1) for (u, v) in g.edges])


def random_structural_subset(rng: random.Random, g: WeightedDigraph,
                             tries: int = 40, proper: bool = True) -> tuple[str, ...]:
    n = len(g.vertices)
    hi = n - 1 if (proper and n > 1) else n
    for _ in range(tries):
        k = rng.randint(1, hi)
        subset = rng.sample(list(g.vertices), k)
        if is_structural(g, subset).ok:
            return tuple(v for v in g.vertices if v in set(subset))
    drop = rng.choice(list(g.vertices))
    return tuple(v for v in g.vertices if v != drop)


def random_subset(rng: random.Random, g: WeightedDigraph) -> tuple[str, ...]:
    k = rng.randint(1, len(g.vertices))
    subset = set(rng.sample(list(g.vertices), k))
    return tuple(v for v in g.vertices if v in subset)


def strip_complement_loops(g: WeightedDigraph, members) -> WeightedDigraph:
    """Drop loops outside `members`; structurality is unaffected."""
    member_set = set(members)
    edges = [(u, v, w) for (u, v), w in g.edges.items()
             if u != v or u in member_set]
    return build(g.vertices, edges)


def permuted(rng: random.Random, g: WeightedDigraph) -> tuple[WeightedDigraph, dict[str, str]]:
    """Relabel by a random permutation of the label set and shuffle the
    declaration order; returns (new graph, old->new mapping)."""
    labels = list(g.vertices)
    shuffled = labels[:]
    rng.shuffle(shuffled)
    mapping = dict(zip(labels, shuffled))
    h = g.relabeled(mapping)
    order = list(h.vertices)
    rng.shuffle(order)
    return h.reordered(order), mapping
