"""Isospectral reduction of a digraph onto a vertex subset.

Two routes are provided deliberately.  The path-sum route evaluates, for each
pair of kept vertices, the sum over interior-free paths of

    (product of edge weights along the path)
    / (product over interior vertices u of (spectral variable - loop(u)))

The matrix route (:func:`schur_oracle`) computes the same object as a Schur
complement over the rational-function field and exists purely to cross-check
the path route; the two must agree entrywise and tests enforce that.

Reduction over an arbitrary (not necessarily structural) subset proceeds by
eliminating one vertex at a time; a singleton complement is always structural,
and the outcome does not depend on the elimination order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptySet, LambdaLoop, SingularBlock
from .graph import WeightedDigraph, build
from .ratfun import RF_LAMBDA, RF_ONE, RF_ZERO, RationalFunction
from .structural import SPath, enumerate_bundle, structural_set


@dataclass(frozen=True)
class ReductionResult:
    """Reduced graph plus the bookkeeping needed to audit the spectrum change.

    ``correction`` holds one loop weight per removed vertex (zero when the
    vertex was loopless), taken from the graph at the moment of its removal.
    ``provenance`` records the structural sets used, in order.
    """

    reduced: WeightedDigraph
    correction: tuple[RationalFunction, ...]
    provenance: tuple[tuple[str, ...], ...]


def path_weight(g: WeightedDigraph, p: SPath) -> RationalFunction:
    """Weight contributed by one interior-free path; a direct edge keeps its
    own weight (the interior product is empty)."""
    w = RF_ONE
    for (u, v) in p.edges():
        w = w * g.weight(u, v)
    for u in p.interior:
        w = w / (RF_LAMBDA - g.weight(u, u))
    return w


def reduce_structural(g: WeightedDigraph, members: Iterable[str]) -> ReductionResult:
    """Single-step reduction over a structural set via path-bundle sums.

    An edge appears in the reduced graph iff its bundle is nonempty and the
    weights do not cancel to zero (cancelling edges are dropped; the spectrum
    is unaffected either way).
    """
    sset = structural_set(g, members)
    bundle = enumerate_bundle(g, sset)
    edges = []
    for (a, b), paths in bundle.items():
        total = RF_ZERO
        for p in paths:
            total = total + path_weight(g, p)
        if total:
            edges.append((a, b, total))
    reduced = build(sset.members, edges)
    correction = tuple(g.weight(v, v) for v in sset.complement)
    return ReductionResult(reduced, correction, (sset.members,))


def eliminate_vertex(g: WeightedDigraph, vertex: str) -> WeightedDigraph:
    """Closed-form single-vertex elimination.

    Equals the bundle reduction over everything-but-`vertex`: each remaining
    pair picks up ``w(i,v) * w(v,j) / (lambda - w(v,v))`` on top of its direct
    weight.
    """
    g.index(vertex)
    loop = g.weight(vertex, vertex)
    if loop == RF_LAMBDA:
        raise LambdaLoop(vertex)
    keep = [v for v in g.vertices if v != vertex]
    gate = RF_LAMBDA - loop
    into = [(u, w) for (u, t), w in g.edges.items() if t == vertex and u != vertex]
    out_of = [(t, w) for (u, t), w in g.edges.items() if u == vertex and t != vertex]
    edges: list[tuple[str, str, RationalFunction]] = []
    for (u, t), w in g.edges.items():
        if u != vertex and t != vertex:
            edges.append((u, t, w))
    for u, w_in in into:
        for t, w_out in out_of:
            edges.append((u, t, w_in * w_out / gate))
    return build(keep, edges)


def reduce_subset(g: WeightedDigraph, keep: Iterable[str],
                  order: Sequence[str] | None = None) -> ReductionResult:
    """Reduce onto an arbitrary nonempty subset by sequential elimination.

    ``order`` fixes which complement vertex goes first (default: declaration
    order); the result is order-independent, and tests shuffle this argument
    to prove it.  If an intermediate loop weight becomes identically the
    spectral variable the reduction stops with LambdaLoop naming the vertex.
    """
    keep = list(keep)
    if not keep:
        raise EmptySet("cannot reduce onto the empty vertex set")
    keep_set = set(keep)
    for label in keep_set:
        g.index(label)
    to_remove = [v for v in g.vertices if v not in keep_set]
    if order is not None:
        order = list(order)
        if sorted(order) != sorted(to_remove):
            raise ValueError("elimination order must be a permutation of the removed vertices")
        to_remove = order

    current = g
    correction: list[RationalFunction] = []
    provenance: list[tuple[str, ...]] = []
    for vertex in to_remove:
        loop = current.weight(vertex, vertex)
        if loop == RF_LAMBDA:
            raise LambdaLoop(vertex, stage=f"after removing {len(provenance)} vertices")
        correction.append(loop)
        provenance.append(tuple(v for v in current.vertices if v != vertex))
        current = eliminate_vertex(current, vertex)
    return ReductionResult(current, tuple(correction), tuple(provenance))


def schur_oracle(g: WeightedDigraph, members: Iterable[str]) -> list[list[RationalFunction]]:
    """Reduced adjacency matrix by block elimination, independent of paths.

    Returns A_kk + A_kr (lambda*I - A_rr)^{-1} A_rk over the rational-function
    field, rows/columns in kept-vertex order.  For a structural set the inner
    block is always invertible; a singular block is reported as an internal
    inconsistency.
    """
    sset = structural_set(g, members)
    kept = list(sset.members)
    removed = list(sset.complement)
    m = len(removed)

    def w(u, v):
        return g.weight(u, v)

    # block (lambda*I - A_rr) augmented with A_rk, solved in place
    lhs = [[(RF_LAMBDA if i == j else RF_ZERO) - w(removed[i], removed[j])
            for j in range(m)] for i in range(m)]
    rhs = [[w(removed[i], kept[j]) for j in range(len(kept))] for i in range(m)]

    for col in range(m):
        pivot_row = next((r for r in range(col, m) if lhs[r][col]), None)
        if pivot_row is None:
            raise SingularBlock("interior block is not invertible over the function field")
        if pivot_row != col:
            lhs[col], lhs[pivot_row] = lhs[pivot_row], lhs[col]
            rhs[col], rhs[pivot_row] = rhs[pivot_row], rhs[col]
        inv = RF_ONE / lhs[col][col]
        lhs[col] = [e * inv for e in lhs[col]]
        rhs[col] = [e * inv for e in rhs[col]]
        for r in range(m):
            if r == col or not lhs[r][col]:
                continue
            factor = lhs[r][col]
            lhs[r] = [a - factor * b for a, b in zip(lhs[r], lhs[col])]
            rhs[r] = [a - factor * b for a, b in zip(rhs[r], rhs[col])]

    n = len(kept)
    result = [[w(kept[i], kept[j]) for j in range(n)] for i in range(n)]
    for i, j, r in itertools.product(range(n), range(n), range(m)):
        coupling = w(kept[i], removed[r])
        if coupling:
            result[i][j] = result[i][j] + coupling * rhs[r][j]
    return result
