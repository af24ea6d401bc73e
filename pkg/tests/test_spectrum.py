"""Characteristic equations, spectra, correction multisets, and the
spectrum-preservation property of reductions."""

import cmath
import random

import numpy as np
import pytest

from conftest import random_graph, random_structural_subset
from isoreduce import (
    build,
    char_equation,
    correction_set,
    correction_values,
    reduce_structural,
    reduce_subset,
    spectra_match,
    spectrum,
)
from isoreduce.errors import IdenticallyZeroDeterminant, LambdaLoop
from isoreduce.ratfun import P_LAMBDA, P_ONE, Polynomial, poly_gcd
from isoreduce.spectrum import CorrectionSet, SpectrumMultiset


def two_cycle():
    return build(["v1", "v2"], [("v1", "v2", "1"), ("v2", "v1", "1")])


def multiset(*values, tol=1e-8):
    entries = tuple((complex(v), 1) for v in values)
    return SpectrumMultiset(entries, tol)


# --- characteristic equation --------------------------------------------------

def test_char_equation_two_cycle():
    ce = char_equation(two_cycle())
    assert ce.num == Polynomial([-1, 0, 1])
    assert ce.den == P_ONE


def test_char_equation_loop_one_over_lambda():
    g = build(["v1"], [("v1", "v1", "1/l")])
    ce = char_equation(g)
    assert ce.num == Polynomial([-1, 0, 1])
    assert ce.den == P_LAMBDA


def test_char_equation_edgeless_graph():
    g = build(["a", "b", "c", "d"], [])
    ce = char_equation(g)
    assert ce.num == P_LAMBDA ** 4
    assert ce.den == P_ONE


def test_char_equation_degree_equals_vertex_count():
    rng = random.Random(41)
    for _ in range(20):
        g = random_graph(rng)
        assert char_equation(g).num.degree == len(g.vertices)


# --- spectrum -----------------------------------------------------------------

def test_spectrum_three_cycle_is_cube_roots_of_unity():
    g = build(["v1", "v2", "v3"],
              [("v1", "v2", "1"), ("v2", "v3", "1"), ("v3", "v1", "1")])
    expected = [cmath.exp(2j * cmath.pi * k / 3) for k in range(3)]
    verdict = spectra_match(spectrum(g), multiset(*expected), CorrectionSet(()))
    assert verdict.match


def test_spectrum_of_reduced_two_cycle():
    g = build(["v1"], [("v1", "v1", "1/l")])
    verdict = spectra_match(spectrum(g), multiset(1, -1), CorrectionSet(()))
    assert verdict.match


def test_spectrum_counts_multiplicity():
    # l^2 (l - 2): two zeros from a 3-vertex graph with one loop... use an
    # explicit graph: edges v1->v2 only plus loop 2 at v3
    g = build(["v1", "v2", "v3"], [("v1", "v2", "1"), ("v3", "v3", "2")])
    s = spectrum(g)
    assert sorted((round(v.real, 9), m) for v, m in s.entries) == [(0.0, 2), (2.0, 1)]


def test_identically_zero_determinant_reported():
    g = build(["v1"], [("v1", "v1", "l")])
    with pytest.raises(IdenticallyZeroDeterminant):
        spectrum(g)


def test_spectrum_matches_numpy_eigenvalues():
    rng = random.Random(43)
    for _ in range(25):
        g = random_graph(rng)
        mat = np.array([[float(g.weight(u, v).constant_value())
                         for v in g.vertices] for u in g.vertices])
        eigs = np.linalg.eigvals(mat)
        ours = spectrum(g, tol=1e-6)
        theirs = multiset(*[complex(z) for z in eigs], tol=1e-6)
        assert spectra_match(ours, theirs, CorrectionSet(()), tol=1e-6).match


def test_spectrum_invariant_under_relabeling():
    from conftest import permuted
    rng = random.Random(47)
    for _ in range(15):
        g = random_graph(rng, max_n=6)
        h, _ = permuted(rng, g)
        assert spectra_match(spectrum(g), spectrum(h), CorrectionSet(())).match


# --- correction sets ------------------------------------------------------------

def test_correction_two_loopless_vertices():
    g = build(["v1", "v2", "v3", "v4"],
              [("v1", "v2", "1"), ("v2", "v1", "1"),
               ("v1", "v3", "1"), ("v3", "v2", "1"), ("v2", "v4", "1"), ("v4", "v1", "1")])
    corr = correction_set(g, ["v1", "v2"])
    assert corr.entries == (0j, 0j)


def test_correction_constant_loop():
    g = build(["v1", "v2"], [("v1", "v2", "1"), ("v2", "v2", "3")])
    assert correction_set(g, ["v1"]).entries == (3 + 0j,)


def test_correction_full_set_empty():
    assert correction_set(two_cycle(), ["v1", "v2"]).entries == ()


def test_correction_lambda_dependent_loop_uses_fixed_points():
    # loop weight 1/l: solutions of l = 1/l are +-1
    g = build(["v1", "v2"], [("v1", "v2", "1"), ("v2", "v2", "1/l")])
    entries = correction_set(g, ["v1"]).entries
    assert len(entries) == 2
    assert {round(z.real) for z in entries} == {-1, 1}


# --- multiset comparison ---------------------------------------------------------

def test_match_with_correction_absorbing_zeros():
    a = multiset(2, -1, 0, 0)
    b = multiset(2, -1)
    assert spectra_match(a, b, CorrectionSet((0j, 0j))).match


def test_match_identical_spectra_without_corrections():
    a = multiset(1, -1)
    assert spectra_match(a, a, CorrectionSet(())).match


def test_match_with_unused_correction_entry():
    a = multiset(1, -1)
    b = multiset(1, -1)
    assert spectra_match(a, b, CorrectionSet((0j,))).match


def test_mismatch_reports_unexplained_values():
    a = multiset(5, 1)
    b = multiset(1)
    verdict = spectra_match(a, b, CorrectionSet((0j,)))
    assert not verdict.match
    assert verdict.unexplained == (5 + 0j,)


def test_correction_entry_consumed_at_most_once():
    a = multiset(0, 0, 1)
    b = multiset(1)
    assert not spectra_match(a, b, CorrectionSet((0j,))).match
    assert spectra_match(a, b, CorrectionSet((0j, 0j))).match


# --- preservation property --------------------------------------------------------

def test_reduction_preserves_spectrum_up_to_correction():
    rng = random.Random(53)
    for _ in range(30):
        g = random_graph(rng)
        members = random_structural_subset(rng, g)
        res = reduce_structural(g, members)
        verdict = spectra_match(spectrum(g), spectrum(res.reduced),
                                correction_set(g, members))
        assert verdict.match, (g.edges, members, verdict)


def test_sequential_reduction_explained_by_stepwise_corrections():
    rng = random.Random(59)
    done = 0
    while done < 20:
        g = random_graph(rng)
        members = random_structural_subset(rng, g, proper=True)
        try:
            res = reduce_subset(g, members)
            reduced_spec = spectrum(res.reduced)
        except (LambdaLoop, IdenticallyZeroDeterminant):
            continue
        done += 1
        corr = correction_values(res.correction)
        assert spectra_match(spectrum(g), reduced_spec, corr).match


def test_reduced_denominator_divides_power_of_loop_gates():
    rng = random.Random(61)
    for _ in range(15):
        g = random_graph(rng)
        members = random_structural_subset(rng, g)
        member_set = set(members)
        gate = P_ONE
        for v in g.vertices:
            if v not in member_set:
                loop = g.weight(v, v)
                gate = gate * (P_LAMBDA * loop.den - loop.num)
        den = char_equation(reduce_structural(g, members).reduced).den
        # den divides gate^k: repeatedly cancel common factors
        for _ in range(len(g.vertices) + 1):
            if den == P_ONE:
                break
            common = poly_gcd(den, gate)
            if common == P_ONE:
                break
            den = den.exact_div(common)
        assert den == P_ONE
