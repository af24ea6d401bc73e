"""Weighted directed graphs with exact rational-function edge weights.

A graph stores its vertices in declaration order (that order is preserved by
every transformation in the package) and at most one edge per ordered pair.
An absent edge is the zero weight; zero-weight edges are erased, so "there is
an edge" and "the weight is nonzero" are the same statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import DuplicateVertex, UnknownVertex
from .ratfun import RationalFunction, RF_ZERO, parse_weight


@dataclass(frozen=True)
class DegreeStats:
    in_degree: int
    out_degree: int
    has_loop: bool


class WeightedDigraph:
    """Immutable-by-convention digraph; construct through :func:`build`."""

    __slots__ = ("vertices", "edges", "_index")

    def __init__(self, vertices: tuple[str, ...],
                 edges: Mapping[tuple[str, str], RationalFunction]):
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertex(label) from None

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def weight(self, u: str, v: str) -> RationalFunction:
        return self.edges.get((u, v), RF_ZERO)

    def has_edge(self, u: str, v: str) -> bool:
        return (u, v) in self.edges

    def successors(self, u: str) -> list[str]:
        return [v for v in self.vertices if (u, v) in self.edges]

    def predecessors(self, v: str) -> list[str]:
        return [u for u in self.vertices if (u, v) in self.edges]

    def edge_list(self) -> list[tuple[str, str, RationalFunction]]:
        """Edges in deterministic (source order, target order) order."""
        out = []
        for u in self.vertices:
            for v in self.vertices:
                w = self.edges.get((u, v))
                if w is not None:
                    out.append((u, v, w))
        return out

    def adjacency(self) -> list[list[RationalFunction]]:
        """Matrix view: entry (i, j) is the weight of the edge i -> j."""
        n = len(self.vertices)
        mat = [[RF_ZERO] * n for _ in range(n)]
        for (u, v), w in self.edges.items():
            mat[self._index[u]][self._index[v]] = w
        return mat

    def degree_stats(self) -> dict[str, DegreeStats]:
        """Edge counts per vertex; a loop counts once in and once out."""
        ins = {v: 0 for v in self.vertices}
        outs = {v: 0 for v in self.vertices}
        loops = set()
        for (u, v) in self.edges:
            outs[u] += 1
            ins[v] += 1
            if u == v:
                loops.add(u)
        return {v: DegreeStats(ins[v], outs[v], v in loops) for v in self.vertices}

    def induced(self, keep: Iterable[str]) -> "WeightedDigraph":
        """Subgraph on `keep`, original declaration order preserved."""
        keep_set = set(keep)
        for label in keep_set:
            self.index(label)
        vertices = tuple(v for v in self.vertices if v in keep_set)
        edges = {(u, v): w for (u, v), w in self.edges.items()
                 if u in keep_set and v in keep_set}
        return WeightedDigraph(vertices, edges)

    def relabeled(self, mapping: Mapping[str, str]) -> "WeightedDigraph":
        vertices = tuple(mapping.get(v, v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise DuplicateVertex("relabeling collapses vertices")
        edges = {(mapping.get(u, u), mapping.get(v, v)): w
                 for (u, v), w in self.edges.items()}
        return WeightedDigraph(vertices, edges)

    def reordered(self, order: Iterable[str]) -> "WeightedDigraph":
        """Same graph with a different vertex declaration order."""
        order = tuple(order)
        if sorted(order) != sorted(self.vertices):
            raise UnknownVertex("reordering must be a permutation of the vertex set")
        return WeightedDigraph(order, self.edges)

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightedDigraph)
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __repr__(self) -> str:
        return f"WeightedDigraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def build(vertices: Iterable[str],
          edges: Iterable[tuple[str, str, RationalFunction | str | int]]) -> WeightedDigraph:
    """Construct a canonical graph.

    Duplicate (from, to) entries are summed; weights that sum to zero are
    dropped.  Weights may be RationalFunction values, weight-expression
    strings, or integers.
    """
    vlist: list[str] = []
    seen: set[str] = set()
    for label in vertices:
        if not label:
            raise ValueError("vertex labels must be nonempty strings")
        if label in seen:
            raise DuplicateVertex(label)
        seen.add(label)
        vlist.append(label)
    acc: dict[tuple[str, str], RationalFunction] = {}
    for u, v, w in edges:
        if u not in seen:
            raise UnknownVertex(u)
        if v not in seen:
            raise UnknownVertex(v)
        if isinstance(w, str):
            w = parse_weight(w)
        elif not isinstance(w, RationalFunction):
            w = RationalFunction(w)
        key = (u, v)
        if key in acc:
            acc[key] = acc[key] + w
        else:
            acc[key] = w
    return WeightedDigraph(tuple(vlist), {k: w for k, w in acc.items() if w})
