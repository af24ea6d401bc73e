"""Selection rules, weighted isomorphism, and the equivalence relation
induced by reducing onto rule-selected subsets."""

import random

import pytest

from conftest import permuted, random_graph
from isoreduce import (
    BUILTIN_RULES,
    apply_rule,
    build,
    correction_values,
    expand,
    reduce_subset,
    register_rule,
    spectra_match,
    spectrally_equivalent,
    spectrum,
    weighted_isomorphic,
)
from isoreduce.equivalence import get_rule
from isoreduce.errors import (
    EmptyGraph,
    LambdaLoop,
    SearchBudgetExceeded,
    UnknownRule,
)
from isoreduce.ratfun import parse_weight
from isoreduce.spectrum import CorrectionSet


def two_cycle():
    return build(["v1", "v2"], [("v1", "v2", "1"), ("v2", "v1", "1")])


# --- rules -------------------------------------------------------------------

def test_min_out_degree_tie_selects_both():
    assert apply_rule("min-out-degree", two_cycle()) == ("v1", "v2")


def test_max_out_degree_star():
    g = build(["v1", "v2", "v3"], [("v1", "v2", "1"), ("v1", "v3", "1")])
    assert apply_rule("max-out-degree", g) == ("v1",)


def test_has_loop_falls_back_to_all_vertices():
    g = two_cycle()
    assert apply_rule("has-loop", g) == ("v1", "v2")
    h = build(["v1", "v2"], [("v1", "v1", "1"), ("v1", "v2", "1")])
    assert apply_rule("has-loop", h) == ("v1",)


def test_all_vertices_rule():
    assert apply_rule("all-vertices", two_cycle()) == ("v1", "v2")


def test_rules_reject_empty_graph():
    with pytest.raises(EmptyGraph):
        apply_rule("min-out-degree", build([], []))


def test_unknown_rule():
    with pytest.raises(UnknownRule):
        get_rule("betweenness")


def test_rules_commute_with_relabeling():
    rng = random.Random(103)
    for _ in range(20):
        g = random_graph(rng)
        h, mapping = permuted(rng, g)
        for rule in BUILTIN_RULES.values():
            expected = {mapping[v] for v in apply_rule(rule, g)}
            assert set(apply_rule(rule, h)) == expected


# --- weighted isomorphism ------------------------------------------------------

def test_isomorphic_single_loops():
    a = build(["x"], [("x", "x", "1/l")])
    b = build(["y"], [("y", "y", "1/l")])
    assert weighted_isomorphic(a, b) == {"x": "y"}


def test_loop_weights_must_match():
    a = build(["x"], [("x", "x", "1/l")])
    b = build(["y"], [("y", "y", "1/l^2")])
    assert weighted_isomorphic(a, b) is None


def test_two_cycles_with_swapped_weights():
    a = build(["x", "y"], [("x", "y", "2"), ("y", "x", "3")])
    b = build(["p", "q"], [("p", "q", "3"), ("q", "p", "2")])
    assert weighted_isomorphic(a, b) == {"x": "q", "y": "p"}


def test_isomorphism_budget():
    n = 13
    labels = [f"v{i}" for i in range(n)]
    g = build(labels, [(labels[i], labels[(i + 1) % n], "1") for i in range(n)])
    with pytest.raises(SearchBudgetExceeded):
        weighted_isomorphic(g, g)


def test_isomorphism_respects_permutation():
    rng = random.Random(107)
    for _ in range(15):
        g = random_graph(rng, max_n=6)
        h, mapping = permuted(rng, g)
        found = weighted_isomorphic(g, h)
        assert found is not None
        for (u, v), w in g.edges.items():
            assert h.weight(found[u], found[v]) == w


# --- spectral equivalence -------------------------------------------------------

def test_reflexive_with_identity_witness():
    g = two_cycle()
    verdict = spectrally_equivalent(g, g, "min-out-degree")
    assert verdict.equivalent
    assert verdict.witness == {"v1": "v1", "v2": "v2"}


def test_distinct_expansions_of_one_base_are_equivalent():
    # both reduce over their sole loop-free in-vertex to the loop 1/l
    h1 = build(["v1", "a"], [("v1", "a", "1"), ("a", "v1", "1")])
    h2 = build(["v1", "b"], [("v1", "b", "2"), ("b", "v1", "1/2")])
    register_rule("first-vertex", lambda g: (g.vertices[0],))
    verdict = spectrally_equivalent(h1, h2, "first-vertex")
    assert verdict.equivalent
    assert verdict.left_reduced.weight("v1", "v1") == parse_weight("1/l")
    assert verdict.right_reduced.weight("v1", "v1") == parse_weight("1/l")


def test_expansions_share_reduction_with_base():
    base = build(["v1", "u", "w"],
                 [("v1", "u", "1"), ("u", "v1", "1"), ("v1", "w", "1"), ("w", "u", "1")])
    grown = expand(base, ["v1"]).expanded
    # max-out-degree picks v1 in both: v1 has out-degree 2, the rest 1
    verdict = spectrally_equivalent(base, grown, "max-out-degree")
    assert verdict.equivalent


def test_different_sizes_not_equivalent():
    g3 = build(["v1", "v2", "v3"],
               [("v1", "v2", "1"), ("v2", "v3", "1"), ("v3", "v1", "1")])
    verdict = spectrally_equivalent(two_cycle(), g3, "all-vertices")
    assert not verdict.equivalent


def _expansion_family():
    base = build(["v1", "u", "w"],
                 [("v1", "u", "1"), ("u", "v1", "1"), ("v1", "w", "1"), ("w", "u", "1")])
    grown = expand(base, ["v1"]).expanded
    rng = random.Random(109)
    relabeled1, _ = permuted(rng, base)
    relabeled2, _ = permuted(rng, grown)
    return [base, grown, relabeled1, relabeled2]


def test_equivalence_relation_laws_on_expansion_family():
    family = _expansion_family()
    for rule in BUILTIN_RULES.values():
        verdicts = {}
        for i, g in enumerate(family):
            for j, h in enumerate(family):
                try:
                    verdicts[(i, j)] = spectrally_equivalent(g, h, rule).equivalent
                except LambdaLoop:
                    verdicts[(i, j)] = None
        for i in range(len(family)):
            assert verdicts[(i, i)] is True  # reflexive
        for (i, j), val in verdicts.items():
            assert val == verdicts[(j, i)]  # symmetric
        for i in range(len(family)):
            for j in range(len(family)):
                for k in range(len(family)):
                    if verdicts[(i, j)] and verdicts[(j, k)]:
                        assert verdicts[(i, k)]  # transitive


def test_equivalent_graphs_have_matching_spectra():
    # necessary condition: spectra agree up to both stepwise corrections
    family = _expansion_family()
    rule = BUILTIN_RULES["max-out-degree"]
    for g in family:
        for h in family:
            res_g = reduce_subset(g, apply_rule(rule, g))
            res_h = reduce_subset(h, apply_rule(rule, h))
            if weighted_isomorphic(res_g.reduced, res_h.reduced) is None:
                continue
            corr = CorrectionSet(correction_values(res_g.correction).entries
                                 + correction_values(res_h.correction).entries)
            assert spectra_match(spectrum(g), spectrum(h), corr).match
