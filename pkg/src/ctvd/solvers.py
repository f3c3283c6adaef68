"""Exact oracle and constant-factor approximation for cliques-or-trees deletion.

`brute_force` is the ground truth used by the verification harness: it
decomposes into connected components, lower-bounds each by packing
vertex-disjoint obstructions, and enumerates deletion sets in increasing
size.  `approx_deletion_set` produces the modulator that seeds the
kernelizer: stage one hits small obstructions wholesale (factor 4 against a
disjoint packing), stage two cleans up what is left, where every surviving
non-clique component is triangle-free with girth at least five, via a
local-ratio feedback-vertex-set 2-approximation.  Together: factor 6.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graph import MultiGraph, connected_components
from .obstructions import find_any_obstruction, find_small_obstruction


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    solution: frozenset | None
    optimum: int | None


@dataclass(frozen=True)
class Modulator:
    """A vertex set whose removal leaves a simple graph of cliques and trees,
    within `factor` times the optimum deletion set size."""

    vertices: frozenset
    factor: int = 6


def brute_force(g: MultiGraph, k: int) -> SolveResult:
    """Decide feasibility for budget k and return a minimum witness.

    Intended for roughly |V| <= 20 with small k; k < 0 is allowed and is
    always infeasible.  Per component, candidate vertices are ordered by
    descending degree, and subset sizes start at the obstruction-packing
    lower bound.
    """
    if k < 0:
        return SolveResult(False, None, None)
    comps = connected_components(g)
    lower = []
    pieces = []
    for comp in comps:
        sub = g.induced_subgraph(comp)
        piece = _ComponentSearch(sub)
        pieces.append(piece)
        lower.append(piece.lower_bound(k + 1))
    if sum(lower) > k:
        return SolveResult(False, None, None)
    chosen: set[int] = set()
    total = 0
    for i, piece in enumerate(pieces):
        cap = k - total - sum(lower[i + 1 :])
        found = piece.minimum_solution(cap, lower[i])
        if found is None:
            return SolveResult(False, None, None)
        chosen |= found
        total += len(found)
        if total > k:
            return SolveResult(False, None, None)
    return SolveResult(True, frozenset(chosen), total)


class _ComponentSearch:
    """Subset search over one connected component, on flat adjacency sets."""

    def __init__(self, sub: MultiGraph):
        self.graph = sub
        self.verts = list(sub.vertices)
        self.adj = {v: set(sub.neighbors(v)) for v in self.verts}
        self.looped = {v for v in self.verts if sub.loop_count(v)}
        self.multi_pairs = [
            (u, v) for u, v, m in sub.edges() if m >= 2
        ]

    def lower_bound(self, stop_at: int) -> int:
        """Greedy vertex-disjoint obstruction packing; stops early at stop_at."""
        work = self.graph.copy()
        count = 0
        while count < stop_at:
            obs = find_any_obstruction(work)
            if obs is None:
                break
            work.delete_vertices(obs.vertices)
            count += 1
        return count

    def minimum_solution(self, cap: int, lb: int) -> set[int] | None:
        if cap < 0 or lb > cap:
            return None
        order = sorted(self.verts, key=lambda v: (-self.graph.degree(v), v))
        for size in range(lb, min(cap, len(order)) + 1):
            for combo in itertools.combinations(order, size):
                if self._clean_without(set(combo)):
                    return set(combo)
        return None

    def _clean_without(self, removed: set[int]) -> bool:
        if any(v not in removed for v in self.looped):
            return False
        for u, v in self.multi_pairs:
            if u not in removed and v not in removed:
                return False
        remaining = [v for v in self.verts if v not in removed]
        seen: set[int] = set()
        for start in remaining:
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            edge_ends = 0
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in removed:
                        continue
                    edge_ends += 1
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            n = len(comp)
            edges = edge_ends // 2
            if edges == n - 1:
                continue  # tree
            if n >= 3 and edges == n * (n - 1) // 2:
                continue  # clique
            return False
        return True


def approx_deletion_set(g: MultiGraph) -> Modulator:
    """Compute a modulator within factor 6 of the optimum.

    Stage one repeatedly deletes the full vertex set of a self-loop,
    multi-edge, diamond, paw, or induced C4 (at most four vertices each,
    pairwise disjoint, so at most 4*opt in total).  Afterwards any component
    with a triangle is a clique, so stage two only has to break the cycles
    of the remaining girth >= 5 components: it runs a feedback-vertex-set
    2-approximation on each, adding at most 2*opt more.
    """
    work = g.copy()
    s: set[int] = set()
    while True:
        obs = find_small_obstruction(work)
        if obs is None:
            break
        s.update(obs.vertices)
        work.delete_vertices(obs.vertices)
    for comp in connected_components(work):
        sub = work.induced_subgraph(comp)
        n = len(comp)
        edges = sum(1 for _ in sub.edges())
        if edges <= n - 1 or edges == n * (n - 1) // 2:
            continue  # forest or clique; nothing to break
        s.update(_fvs_two_approx(sub))
    rest = g.induced_subgraph(set(g.vertices) - s)
    leftover = find_any_obstruction(rest)
    if leftover is not None:
        raise RuntimeError(f"modulator construction left an obstruction: {leftover}")
    return Modulator(frozenset(s))


def _fvs_two_approx(sub: MultiGraph) -> set[int]:
    """Local-ratio 2-approximation for feedback vertex set on a simple graph.

    Weights start at one; rounds either charge a semidisjoint cycle (a cycle
    with at most one vertex of degree > 2) uniformly or charge every vertex
    proportionally to degree-1, moving zero-weight vertices into the
    solution; a reverse-delete pass strips redundant picks.
    """
    adj = {v: set(sub.neighbors(v)) for v in sub.vertices}
    weight = {v: Fraction(1) for v in adj}
    stack: list[int] = []

    def cleanup():
        low = [v for v in adj if len(adj[v]) <= 1]
        while low:
            v = low.pop()
            if v not in adj or len(adj[v]) > 1:
                continue
            for w in adj[v]:
                adj[w].discard(v)
                if len(adj[w]) <= 1:
                    low.append(w)
            del adj[v]

    cleanup()
    while adj:
        cycle = _semidisjoint_cycle(adj)
        if cycle is not None:
            gamma = min(weight[v] for v in cycle)
            for v in cycle:
                weight[v] -= gamma
        else:
            gamma = min(weight[v] / (len(adj[v]) - 1) for v in adj)
            for v in adj:
                weight[v] -= gamma * (len(adj[v]) - 1)
        for v in sorted(w for w in adj if weight[w] == 0):
            stack.append(v)
            for w in adj[v]:
                adj[w].discard(v)
            del adj[v]
        cleanup()

    chosen = set(stack)
    for v in reversed(stack):
        if _is_forest_without(sub, chosen - {v}):
            chosen.discard(v)
    return chosen


def _semidisjoint_cycle(adj) -> list[int] | None:
    """Find a cycle in which every vertex, except possibly one, has degree 2."""
    for start in sorted(adj):
        if len(adj[start]) != 2:
            continue
        # walk the maximal degree-2 chain through `start` in both directions
        chain = {start}
        ends = []
        returned = False
        for first in sorted(adj[start]):
            prev, cur = start, first
            while cur != start and len(adj[cur]) == 2:
                chain.add(cur)
                nxt = [w for w in adj[cur] if w != prev]
                prev, cur = cur, nxt[0]
            if cur == start:
                returned = True
                break
            ends.append(cur)
        if returned:
            return sorted(chain)  # pure degree-2 cycle
        if ends[0] == ends[1] and len(adj[ends[0]]) > 2:
            return sorted(chain | {ends[0]})
    return None


def _is_forest_without(sub: MultiGraph, removed: set[int]) -> bool:
    remaining = [v for v in sub.vertices if v not in removed]
    keep = set(remaining)
    seen: set[int] = set()
    for start in remaining:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        ends = 0
        while stack:
            u = stack.pop()
            for w in sub.neighbors(u):
                if w not in keep:
                    continue
                ends += 1
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        if ends // 2 != len(comp) - 1:
            return False
    return True
