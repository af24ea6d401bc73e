"""Selection rules and the induced equivalence of networks.

A selection rule deterministically picks a nonempty vertex subset of any
graph, using only relabeling-invariant information (degrees, loops, ...).
Two graphs are equivalent under a rule when reducing each onto its selected
subset yields the same network, compared up to a weight-preserving
isomorphism since the two subsets carry unrelated labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import EmptyGraph, SearchBudgetExceeded, UnknownRule
from .graph import WeightedDigraph
from .ratfun import format_weight
from .reduction import reduce_subset

DEFAULT_ISO_BUDGET = 12


@dataclass(frozen=True)
class SelectionRule:
    name: str
    selector: Callable[[WeightedDigraph], tuple[str, ...]]


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    witness: dict[str, str] | None
    left_reduced: WeightedDigraph
    right_reduced: WeightedDigraph


def _degree_rule(attr: str, best: Callable) -> Callable[[WeightedDigraph], tuple[str, ...]]:
    def selector(g: WeightedDigraph) -> tuple[str, ...]:
        stats = g.degree_stats()
        target = best(getattr(s, attr) for s in stats.values())
        return tuple(v for v in g.vertices if getattr(stats[v], attr) == target)
    return selector


def _has_loop_rule(g: WeightedDigraph) -> tuple[str, ...]:
    looped = tuple(v for v in g.vertices if g.has_edge(v, v))
    # fallback keeps the rule total: no loops anywhere selects everything
    return looped if looped else tuple(g.vertices)


BUILTIN_RULES: dict[str, SelectionRule] = {
    "min-out-degree": SelectionRule("min-out-degree", _degree_rule("out_degree", min)),
    "max-out-degree": SelectionRule("max-out-degree", _degree_rule("out_degree", max)),
    "min-in-degree": SelectionRule("min-in-degree", _degree_rule("in_degree", min)),
    "max-in-degree": SelectionRule("max-in-degree", _degree_rule("in_degree", max)),
    "has-loop": SelectionRule("has-loop", _has_loop_rule),
    "all-vertices": SelectionRule("all-vertices", lambda g: tuple(g.vertices)),
}

_registry: dict[str, SelectionRule] = dict(BUILTIN_RULES)


def register_rule(name: str, selector: Callable[[WeightedDigraph], tuple[str, ...]]) -> SelectionRule:
    """Register a custom rule under a stable name (overwrites an existing one)."""
    rule = SelectionRule(name, selector)
    _registry[name] = rule
    return rule


def get_rule(name: str) -> SelectionRule:
    try:
        return _registry[name]
    except KeyError:
        raise UnknownRule(name) from None


def apply_rule(rule: SelectionRule | str, g: WeightedDigraph) -> tuple[str, ...]:
    """The subset selected by the rule; always nonempty for a nonempty graph."""
    if isinstance(rule, str):
        rule = get_rule(rule)
    if not g.vertices:
        raise EmptyGraph("selection rules are undefined on the empty graph")
    selected = tuple(rule.selector(g))
    if not selected:
        raise EmptyGraph(f"rule {rule.name!r} selected no vertices")
    return selected


def _vertex_profile(g: WeightedDigraph, v: str):
    outs = sorted((format_weight(w), t == v)
                  for (u, t), w in g.edges.items() if u == v)
    ins = sorted((format_weight(w), u == v)
                 for (u, t), w in g.edges.items() if t == v)
    return (len(outs), len(ins), format_weight(g.weight(v, v)), tuple(outs), tuple(ins))


def weighted_isomorphic(g: WeightedDigraph, h: WeightedDigraph,
                        max_size: int = DEFAULT_ISO_BUDGET) -> dict[str, str] | None:
    """A vertex bijection mapping edges to edges with exactly equal canonical
    weights, or None.  Backtracking over profile-compatible candidates only;
    intended for the small graphs reductions produce."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if len(g.vertices) > max_size:
        raise SearchBudgetExceeded(
            f"isomorphism search limited to {max_size} vertices, got {len(g.vertices)}")

    g_profiles = {v: _vertex_profile(g, v) for v in g.vertices}
    h_profiles = {v: _vertex_profile(h, v) for v in h.vertices}
    if sorted(g_profiles.values()) != sorted(h_profiles.values()):
        return None

    candidates = {v: [w for w in h.vertices if h_profiles[w] == g_profiles[v]]
                  for v in g.vertices}
    order = sorted(g.vertices, key=lambda v: len(candidates[v]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for gv, hv in mapping.items():
            if g.weight(v, gv) != h.weight(w, hv):
                return False
            if g.weight(gv, v) != h.weight(hv, w):
                return False
        return g.weight(v, v) == h.weight(w, w)

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if backtrack(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if backtrack(0) else None


def spectrally_equivalent(g: WeightedDigraph, h: WeightedDigraph,
                          rule: SelectionRule | str) -> EquivalenceVerdict:
    """Reduce both graphs onto their rule-selected subsets and compare."""
    left = reduce_subset(g, apply_rule(rule, g)).reduced
    right = reduce_subset(h, apply_rule(rule, h)).reduced
    witness = weighted_isomorphic(left, right)
    return EquivalenceVerdict(witness is not None, witness, left, right)
