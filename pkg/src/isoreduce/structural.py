"""Structural-set validation and enumeration of interior-free path bundles.

A vertex subset S is structural when the complement induces no cycles once
loops are stripped, and no complement vertex carries a loop weight identically
equal to the spectral variable.  Those two conditions make the bundle of
S-interior-free paths finite and every path weight well defined.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptySet, NotStructural
from .graph import WeightedDigraph
from .ratfun import RF_LAMBDA


@dataclass(frozen=True)
class SPath:
    """A path whose endpoints lie in the structural set and whose interior
    vertices are distinct complement vertices.  Equal endpoints are allowed
    (a cycle based at that vertex); a loop edge is the length-1 cycle."""

    vertices: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def interior(self) -> tuple[str, ...]:
        return self.vertices[1:-1]

    @property
    def is_direct(self) -> bool:
        return len(self.vertices) == 2

    def edges(self) -> list[tuple[str, str]]:
        return [(self.vertices[i], self.vertices[i + 1])
                for i in range(len(self.vertices) - 1)]


@dataclass(frozen=True)
class StructuralVerdict:
    ok: bool
    cycle_witness: tuple[str, ...] | None = None
    lambda_loop_witness: str | None = None


@dataclass(frozen=True)
class StructuralSet:
    graph: WeightedDigraph
    members: tuple[str, ...]
    complement: tuple[str, ...]


class PathBundle:
    """All interior-free paths, grouped by (source, target) pair."""

    def __init__(self, mapping: dict[tuple[str, str], tuple[SPath, ...]]):
        self._mapping = {k: v for k, v in mapping.items() if v}

    def paths(self, source: str, target: str) -> tuple[SPath, ...]:
        return self._mapping.get((source, target), ())

    def pairs(self) -> list[tuple[str, str]]:
        return list(self._mapping)

    def items(self):
        return self._mapping.items()

    def all_paths(self) -> list[SPath]:
        out: list[SPath] = []
        for paths in self._mapping.values():
            out.extend(paths)
        return out

    def __len__(self) -> int:
        return sum(len(v) for v in self._mapping.values())


def strip_loops(g: WeightedDigraph) -> WeightedDigraph:
    """The same graph with every (v, v) edge removed."""
    return WeightedDigraph(g.vertices,
                           {e: w for e, w in g.edges.items() if e[0] != e[1]})


def _strongly_connected_components(vertices: list[str],
                                   succ: dict[str, list[str]]) -> list[list[str]]:
    """Iterative Tarjan; components in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def _cycle_within(component: list[str], succ: dict[str, list[str]]) -> tuple[str, ...]:
    """A concrete cycle inside a nontrivial strongly connected component."""
    comp = set(component)
    start = component[0]
    seen: dict[str, int] = {}
    walk = [start]
    seen[start] = 0
    current = start
    while True:
        nxt = next(w for w in succ[current] if w in comp)
        if nxt in seen:
            return tuple(walk[seen[nxt]:])
        seen[nxt] = len(walk)
        walk.append(nxt)
        current = nxt


def is_structural(g: WeightedDigraph, members) -> StructuralVerdict:
    """Check the two structural-set conditions, returning a witness on failure."""
    members = list(members)
    if not members:
        raise EmptySet("a structural set must be nonempty")
    member_set = set(members)
    for label in members:
        g.index(label)
    complement = [v for v in g.vertices if v not in member_set]

    for v in complement:
        if g.weight(v, v) == RF_LAMBDA:
            return StructuralVerdict(False, lambda_loop_witness=v)

    stripped = strip_loops(g)
    succ = {v: [w for w in stripped.successors(v) if w not in member_set]
            for v in complement}
    for comp in _strongly_connected_components(complement, succ):
        if len(comp) > 1:
            return StructuralVerdict(False, cycle_witness=_cycle_within(comp, succ))
    return StructuralVerdict(True)


def structural_set(g: WeightedDigraph, members) -> StructuralSet:
    """Validated structural set; raises NotStructural with the witness."""
    members = list(members)
    verdict = is_structural(g, members)
    if not verdict.ok:
        if verdict.cycle_witness is not None:
            raise NotStructural(
                f"complement contains the cycle {' -> '.join(verdict.cycle_witness)}",
                cycle_witness=verdict.cycle_witness)
        raise NotStructural(
            f"vertex {verdict.lambda_loop_witness!r} has a spectral-variable loop",
            lambda_loop_witness=verdict.lambda_loop_witness)
    member_set = set(members)
    ordered = tuple(v for v in g.vertices if v in member_set)
    complement = tuple(v for v in g.vertices if v not in member_set)
    return StructuralSet(g, ordered, complement)


def enumerate_bundle(g: WeightedDigraph, sset: StructuralSet) -> PathBundle:
    """Exhaustive, duplicate-free enumeration of interior-free paths.

    Depth-first from each member vertex; a step into the structural set ends
    a path, a step into an unvisited complement vertex extends it.  The
    complement being acyclic (after loop stripping) bounds the search.
    """
    member_set = set(sset.members)
    succ = {v: g.successors(v) for v in g.vertices}
    mapping: dict[tuple[str, str], list[SPath]] = {}

    def explore(path: list[str]):
        current = path[-1]
        for w in succ[current]:
            if w in member_set:
                p = SPath(tuple(path) + (w,))
                mapping.setdefault((path[0], w), []).append(p)
            elif w not in path:
                path.append(w)
                explore(path)
                path.pop()

    for start in sset.members:
        explore([start])
    return PathBundle({k: tuple(v) for k, v in mapping.items()})
