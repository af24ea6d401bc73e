"""Spectrum-preserving transformations that keep the original weight set.

Fixed-weight reduction trades the rational-function weights of a bundle
reduction for plain products and sums of the original weights: every bundle
path is reweighted so its first edge carries the product of the path's edge
weights and the rest carry weight one, then interior vertices are merged
position-wise counted from the path's end, giving one unit-weight chain per
terminal vertex.  Equal-length paths sharing both endpoints merge their entry
edges into a single summed edge.  Only the multiplicity of the eigenvalue
zero can change under this construction.

Expansion goes the other way: shared interior vertices of the path bundle are
split into private copies (loops included) so all bundle paths become pairwise
independent, i.e. share no interior vertices.  Each split of a vertex that
sits on n paths adds n - 1 known eigenvalues (the vertex's loop weight, zero
when loopless).  Edges on no bundle path lie on no cycle at all when the set
is structural, so they are carried over untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LoopInComplement
from .graph import WeightedDigraph, build
from .ratfun import RF_ONE, RF_ZERO, RationalFunction, format_weight
from .spectrum import correction_values
from .structural import (
    SPath,
    _strongly_connected_components,
    enumerate_bundle,
    strip_loops,
    structural_set,
)


@dataclass(frozen=True)
class ReweightedPath:
    """One bundle path after step one: the entry edge carries the product of
    the original edge weights, every later edge carries weight one."""

    source: str
    terminal: str
    interior_count: int
    entry_weight: RationalFunction


@dataclass(frozen=True)
class ExpansionReport:
    expanded: WeightedDigraph
    delta: tuple[complex, ...]
    interior_counts: dict[str, int]


def _fresh(base: str, taken: set[str]) -> str:
    label = base
    while label in taken:
        label += "'"
    taken.add(label)
    return label


def reweighted_bundle(g: WeightedDigraph, members) -> dict[str, list[ReweightedPath]]:
    """Reweighted bundle paths grouped by terminal vertex."""
    sset = structural_set(g, members)
    bundle = enumerate_bundle(g, sset)
    grouped: dict[str, list[ReweightedPath]] = {}
    for (a, b), paths in bundle.items():
        for p in paths:
            product = RF_ONE
            for (u, v) in p.edges():
                product = product * g.weight(u, v)
            grouped.setdefault(b, []).append(
                ReweightedPath(a, b, len(p.interior), product))
    return grouped


def fixed_weight_reduce(g: WeightedDigraph, members) -> WeightedDigraph:
    """Reduce onto a structural set while keeping weights in the ring the
    original weights generate.

    Requires every complement vertex to be loopless.  Per terminal vertex a
    single chain of unit-weight edges replaces all merged interiors; a path
    with k interior vertices enters the chain at depth k with its product
    weight, and equal-depth paths sharing source and terminal sum their entry
    weights.  Direct edges pass through unchanged.
    """
    sset = structural_set(g, members)
    looped = tuple(v for v in sset.complement if g.has_edge(v, v))
    if looped:
        raise LoopInComplement(looped)

    grouped = reweighted_bundle(g, members)
    taken = set(g.vertices)
    vertices = list(sset.members)
    edges: list[tuple[str, str, RationalFunction]] = []
    for terminal in sset.members:
        paths = grouped.get(terminal, [])
        depth = max((p.interior_count for p in paths), default=0)
        chain: list[str] = []
        for d in range(1, depth + 1):
            chain.append(_fresh(f"{terminal}#{d}", taken))
        vertices.extend(chain)
        for d, node in enumerate(chain, start=1):
            edges.append((node, chain[d - 2] if d > 1 else terminal, RF_ONE))
        for p in paths:
            if p.interior_count == 0:
                edges.append((p.source, terminal, p.entry_weight))
            else:
                # build() sums the parallel entries of equal-depth paths
                edges.append((p.source, chain[p.interior_count - 1], p.entry_weight))
    return build(vertices, edges)


@dataclass(frozen=True)
class ClosureVerdict:
    ok: bool
    violations: tuple[str, ...]
    vertex_reduced: bool


def weight_set_closure_check(g: WeightedDigraph, reduced: WeightedDigraph,
                             max_factors: int | None = None,
                             max_terms: int = 96,
                             value_cap: int = 200_000) -> ClosureVerdict:
    """Verify every reduced weight lives in the unital ring generated by the
    original weights: a finite sum of finite products of original weights, or
    the constant one.

    Membership is decided by bounded search - products of up to ``max_factors``
    original weights, then breadth-first sums of up to ``max_terms`` of those
    products.  The verdict also reports whether the vertex count actually
    decreased (the qualification for calling this a reduction over the ring).
    """
    base = set(g.edges.values())
    targets = {format_weight(w): w for w in reduced.edges.values()}
    if max_factors is None:
        max_factors = max(len(g.vertices), 2)

    products: set[RationalFunction] = {RF_ONE}
    frontier: set[RationalFunction] = {RF_ONE}
    for _ in range(max_factors):
        nxt = set()
        for p in frontier:
            for w in base:
                q = p * w
                if q not in products:
                    products.add(q)
                    nxt.add(q)
        frontier = nxt
        if not frontier or len(products) > value_cap:
            break

    remaining = dict(targets)
    reach: set[RationalFunction] = set()
    layer: set[RationalFunction] = {RF_ZERO}
    for _ in range(max_terms):
        nxt = set()
        for s in layer:
            for p in products:
                t = s + p
                if t not in reach:
                    reach.add(t)
                    nxt.add(t)
        for key in [k for k, w in remaining.items() if w in reach]:
            del remaining[key]
        if not remaining or not nxt or len(reach) > value_cap:
            break
        layer = nxt

    violations = tuple(sorted(remaining))
    return ClosureVerdict(not violations, violations,
                          len(reduced.vertices) < len(g.vertices))


def expand(g: WeightedDigraph, members) -> ExpansionReport:
    """Split shared interior vertices so all bundle paths become independent.

    The first path through a vertex keeps the original; later paths get fresh
    copies carrying the same loop.  Member vertices, direct member-to-member
    edges, and edges on no bundle path are shared unchanged.  ``delta`` lists
    the known spectrum growth: per interior vertex on n paths, n - 1 entries
    of its loop weight (zero when loopless).
    """
    sset = structural_set(g, members)
    bundle = enumerate_bundle(g, sset)

    ordered_paths: list[SPath] = []
    for a in sset.members:
        for b in sset.members:
            ordered_paths.extend(bundle.paths(a, b))

    path_edges: set[tuple[str, str]] = set()
    for p in ordered_paths:
        path_edges.update(p.edges())

    taken = set(g.vertices)
    vertices = list(g.vertices)
    new_edges: dict[tuple[str, str], RationalFunction] = {}

    # everything not on any bundle path is carried over as-is
    for (u, v), w in g.edges.items():
        if (u, v) not in path_edges:
            new_edges[(u, v)] = w

    seen_count: dict[str, int] = {}
    for p in ordered_paths:
        assigned: dict[str, str] = {}
        for u in p.interior:
            n_seen = seen_count.get(u, 0)
            seen_count[u] = n_seen + 1
            if n_seen == 0:
                assigned[u] = u
            else:
                copy = _fresh(f"{u}@{n_seen + 1}", taken)
                vertices.append(copy)
                assigned[u] = copy
                loop = g.weight(u, u)
                if loop:
                    new_edges[(copy, copy)] = loop

        def place(x: str) -> str:
            return assigned.get(x, x)

        for (u, v) in p.edges():
            new_edges[(place(u), place(v))] = g.weight(u, v)

    delta: list[complex] = []
    for v in g.vertices:
        n = seen_count.get(v, 0)
        if n > 1:
            values = list(correction_values([g.weight(v, v)]).entries)
            delta.extend(values * (n - 1))
    delta.sort(key=lambda z: (z.real, z.imag))

    expanded = WeightedDigraph(tuple(vertices), new_edges)
    return ExpansionReport(expanded, tuple(delta), dict(seen_count))


def sparsifiable(g: WeightedDigraph) -> bool:
    """True iff the graph has two distinct non-loop cycles sharing a vertex.

    Equivalent test: some strongly connected component of the loop-stripped
    graph has more internal edges than vertices (a component that is a single
    directed cycle has exactly as many).
    """
    stripped = strip_loops(g)
    succ = {v: stripped.successors(v) for v in stripped.vertices}
    for comp in _strongly_connected_components(list(stripped.vertices), succ):
        if len(comp) < 2:
            continue
        comp_set = set(comp)
        internal = sum(1 for (u, v) in stripped.edges
                       if u in comp_set and v in comp_set)
        if internal > len(comp):
            return True
    return False
