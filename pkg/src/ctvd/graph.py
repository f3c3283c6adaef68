"""Multigraph primitives and the solution predicate for cliques-or-trees deletion."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ComponentKind(Enum):
    CLIQUE = "clique"
    TREE = "tree"
    NEITHER = "neither"


class MultiGraph:
    """Undirected multigraph with edge multiplicities, self-loops and stable ids.

    Vertex ids are handed out by an internal counter and never reused after a
    deletion, so reduction traces can refer to vertices unambiguously across
    the whole lifetime of a pipeline run.  Degrees count multiplicities, and a
    self-loop contributes two to the degree of its vertex.
    """

    __slots__ = ("_adj", "_loops", "_next_id")

    def __init__(self) -> None:
        self._adj: dict[int, dict[int, int]] = {}
        self._loops: dict[int, int] = {}
        self._next_id = 0

    # construction ---------------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_id
        self._next_id += 1
        self._adj[v] = {}
        self._loops[v] = 0
        return v

    def add_vertices(self, count: int) -> list[int]:
        return [self.add_vertex() for _ in range(count)]

    def add_edge(self, u: int, v: int, multiplicity: int = 1) -> None:
        """Add `multiplicity` parallel edges between distinct vertices u and v."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop via add_edge({u}, {v}); use add_loop")
        if multiplicity < 1:
            raise ValueError("multiplicity must be at least 1")
        self._adj[u][v] = self._adj[u].get(v, 0) + multiplicity
        self._adj[v][u] = self._adj[v].get(u, 0) + multiplicity

    def set_multiplicity(self, u: int, v: int, multiplicity: int) -> None:
        """Force the edge u-v to the given multiplicity; 0 removes it."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v or multiplicity < 0:
            raise ValueError("set_multiplicity needs distinct endpoints and m >= 0")
        if multiplicity == 0:
            self._adj[u].pop(v, None)
            self._adj[v].pop(u, None)
        else:
            self._adj[u][v] = multiplicity
            self._adj[v][u] = multiplicity

    def remove_edge(self, u: int, v: int) -> None:
        """Remove all parallel edges between u and v."""
        if self.multiplicity(u, v) == 0:
            raise ValueError(f"no edge {u}-{v} to remove")
        self.set_multiplicity(u, v, 0)

    def add_loop(self, v: int, count: int = 1) -> None:
        self._check_vertex(v)
        if count < 1:
            raise ValueError("loop count must be at least 1")
        self._loops[v] += count

    def clear_loops(self, v: int) -> None:
        self._check_vertex(v)
        self._loops[v] = 0

    def delete_vertex(self, v: int) -> None:
        self._check_vertex(v)
        for w in list(self._adj[v]):
            del self._adj[w][v]
        del self._adj[v]
        del self._loops[v]

    def delete_vertices(self, vs) -> None:
        for v in sorted(set(vs)):
            self.delete_vertex(v)

    # queries --------------------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj))

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return sorted(self._adj[v])

    def multiplicity(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return 0
        return self._adj[u].get(v, 0)

    def loop_count(self, v: int) -> int:
        self._check_vertex(v)
        return self._loops[v]

    def degree(self, v: int) -> int:
        """Sum of incident edge multiplicities; each self-loop counts twice."""
        self._check_vertex(v)
        return sum(self._adj[v].values()) + 2 * self._loops[v]

    def edges(self):
        """Yield (u, v, multiplicity) with u < v, in sorted order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    def loops(self):
        """Yield (v, count) for vertices carrying self-loops, in sorted order."""
        for v in sorted(self._loops):
            if self._loops[v]:
                yield v, self._loops[v]

    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.edges()) + sum(c for _, c in self.loops())

    def is_simple(self) -> bool:
        if any(c for _, c in self.loops()):
            return False
        return all(m == 1 for _, _, m in self.edges())

    def copy(self) -> "MultiGraph":
        g = MultiGraph()
        g._adj = {v: dict(nbrs) for v, nbrs in self._adj.items()}
        g._loops = dict(self._loops)
        g._next_id = self._next_id
        return g

    def induced_subgraph(self, vs) -> "MultiGraph":
        keep = set(vs)
        unknown = keep - set(self._adj)
        if unknown:
            raise ValueError(f"unknown vertices {sorted(unknown)}")
        g = MultiGraph()
        g._adj = {
            v: {w: m for w, m in self._adj[v].items() if w in keep} for v in keep
        }
        g._loops = {v: self._loops[v] for v in keep}
        g._next_id = self._next_id
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._adj == other._adj and dict(self.loops()) == dict(other.loops())

    def __repr__(self) -> str:
        return (
            f"MultiGraph(n={self.vertex_count}, "
            f"edges={list(self.edges())}, loops={dict(self.loops())})"
        )

    def _check_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise ValueError(f"unknown vertex id {v!r}")


@dataclass(frozen=True)
class Instance:
    """A multigraph together with the deletion budget k."""

    graph: MultiGraph
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("budget k must be non-negative")


def connected_components(g: MultiGraph) -> list[set[int]]:
    """Partition the vertices into maximal connected sets (multiplicity-blind)."""
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def classify_component(g: MultiGraph, comp: set[int]) -> ComponentKind:
    """Classify a connected component as clique, tree, or neither.

    Single vertices and single edges count as trees.  Components carrying a
    self-loop or a multi-edge are never cliques or trees.
    """
    comp = set(comp)
    if not comp:
        raise ValueError("empty vertex set is not a component")
    for v in comp:
        g._check_vertex(v)
    reach = {min(comp)}
    queue = [min(comp)]
    while queue:
        v = queue.pop()
        for w in g.neighbors(v):
            if w not in reach:
                reach.add(w)
                queue.append(w)
    if reach != comp:
        raise ValueError("vertex set is not a connected component")

    n = len(comp)
    edge_sum = 0
    simple_pairs = 0
    for v in comp:
        if g.loop_count(v):
            return ComponentKind.NEITHER
        for w, m in g._adj[v].items():
            if v < w:
                if m > 1:
                    return ComponentKind.NEITHER
                edge_sum += m
                simple_pairs += 1
    if simple_pairs == n * (n - 1) // 2:
        return ComponentKind.TREE if n <= 2 else ComponentKind.CLIQUE
    if edge_sum == n - 1:
        return ComponentKind.TREE
    return ComponentKind.NEITHER


def is_solution(g: MultiGraph, x, k: int) -> bool:
    """True iff |x| <= k and removing x leaves a simple graph whose
    components are all cliques or trees."""
    x = set(x)
    unknown = x - set(g.vertices)
    if unknown:
        raise ValueError(f"solution contains unknown vertices {sorted(unknown)}")
    if len(x) > k:
        return False
    rest = g.induced_subgraph(set(g.vertices) - x)
    if not rest.is_simple():
        return False
    return all(
        classify_component(rest, comp) is not ComponentKind.NEITHER
        for comp in connected_components(rest)
    )
