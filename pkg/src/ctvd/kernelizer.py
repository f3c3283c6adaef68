"""Reduction-rule engine producing an equivalent bounded-size instance.

The engine owns a working graph, a budget k, and a modulator S whose removal
leaves only clique and tree components.  Rules are tried in a fixed priority
order until none applies; every application appends a trace record carrying
enough detail to replay the run edit-for-edit.  Writing V1 for the vertices
of clique components of G - S with at least three vertices and V2 for the
rest, the fixpoint satisfies, with eps(k) = (8*C(|S|,3) + 4*C(|S|,2) +
2*C(|S|,1)) * (k+4):

  * every edge multiplicity is at most 2,
  * every vertex has at most one pendant neighbor,
  * no degree-2 tail has 3 or more vertices, no overbridge 5 or more,
  * every component of G - S touches S,
  * at most 2|S| clique components, |V1| <= 2|S|*eps(k),
  * |V2| <= 1500*(k+1)*|S|.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .expansion import Bipartition, flower_or_hitting_set, new_q_expansion, q_expansion
from .graph import (
    ComponentKind,
    Instance,
    MultiGraph,
    classify_component,
    connected_components,
)
from .obstructions import find_degree2_overbridge, find_degree2_tail
from .solvers import approx_deletion_set

MODULATOR_FACTOR = 6
DEGREE_TRIGGER = 60  # per-unit-of-(k+1) degree threshold for the tree expansion


@dataclass(frozen=True)
class TraceRecord:
    rule: str
    k_before: int
    k_after: int
    params: tuple[tuple[str, str], ...]

    def get(self, key: str) -> str:
        for name, value in self.params:
            if name == key:
                return value
        raise KeyError(key)


@dataclass(frozen=True)
class KernelResult:
    instance: Instance
    no_instance: bool
    trace: tuple[TraceRecord, ...]
    modulator: frozenset
    bound: int

    @property
    def s_size(self) -> int:
        return len(self.modulator)

    @property
    def within_bound(self) -> bool:
        return self.instance.graph.vertex_count <= self.bound


@dataclass(frozen=True)
class CliqueMarking:
    clique: frozenset
    marked: frozenset


def eps(s_size: int, k: int) -> int:
    """Marking capacity per clique component."""
    return (
        8 * math.comb(s_size, 3) + 4 * math.comb(s_size, 2) + 2 * math.comb(s_size, 1)
    ) * (k + 4)


def size_bound(s_size: int, k: int) -> int:
    """Headline vertex bound reported for a kernel."""
    return s_size + 2 * s_size * eps(s_size, k) + 1525 * k * s_size


def canonical_no_instance() -> Instance:
    """The fixed constant-size rejected output: a 4-cycle with budget zero."""
    g = MultiGraph()
    a, b, c, d = g.add_vertices(4)
    g.add_edge(a, b)
    g.add_edge(b, c)
    g.add_edge(c, d)
    g.add_edge(d, a)
    return Instance(g, 0)


def mark_clique(g: MultiGraph, s: set[int], k: int, clique: set[int]) -> CliqueMarking:
    """Mark min(candidates, k+4) clique vertices per adjacency profile.

    Profiles range over non-empty subsets Z of S with |Z| <= 3 and all 0/1
    adjacency patterns on Z; a clique vertex is a candidate for (Z, f) when
    its adjacency to each z in Z matches f(z).
    """
    marked: set[int] = set()
    quota = k + 4
    s_sorted = sorted(s)
    members = sorted(clique)
    adj_to_s = {v: {z for z in s_sorted if g.multiplicity(v, z) >= 1} for v in members}
    for size in (1, 2, 3):
        for z_set in itertools.combinations(s_sorted, size):
            for pattern in itertools.product((1, 0), repeat=size):
                hits = 0
                for v in members:
                    ok = all(
                        (z in adj_to_s[v]) == bool(want)
                        for z, want in zip(z_set, pattern)
                    )
                    if ok:
                        marked.add(v)
                        hits += 1
                        if hits == quota:
                            break
    capacity = eps(len(s), k)
    if len(marked) > capacity:
        raise RuntimeError(
            f"marked {len(marked)} vertices, above the {capacity} capacity"
        )
    return CliqueMarking(frozenset(clique), frozenset(marked))


class KernelEngine:
    """Mutable kernelization state: working graph, budget, modulator, trace."""

    def __init__(self, instance: Instance, modulator: set[int] | None = None):
        self.graph = instance.graph.copy()
        self.k = instance.k
        if modulator is None:
            modulator = set(approx_deletion_set(self.graph).vertices)
        self.s = set(modulator)
        self._check_modulator()
        self.trace: list[TraceRecord] = []
        self.rejected = False

    # state helpers --------------------------------------------------------

    def _check_modulator(self) -> None:
        unknown = self.s - set(self.graph.vertices)
        if unknown:
            raise ValueError(f"modulator contains unknown vertices {sorted(unknown)}")
        if not self._modulator_valid():
            raise ValueError("modulator does not cover all obstructions")

    def _modulator_valid(self) -> bool:
        rest = self.rest()
        return all(
            classify_component(rest, comp) is not ComponentKind.NEITHER
            for comp in connected_components(rest)
        )

    def _repair_modulator(self) -> None:
        """Restore modulator validity after a rule edit.

        The overbridge shortcut can close a cycle behind the modulator's
        back when the removed chain crossed it; the graph rewrite stays
        equivalence-preserving, so a fresh factor-6 modulator (and the usual
        rejection threshold against the current budget) puts the engine back
        on its invariants.
        """
        if self._modulator_valid():
            return
        fresh = approx_deletion_set(self.graph).vertices
        self.s = set(fresh)
        self.trace.append(
            TraceRecord(
                "modulator-repair", self.k, self.k, (("size", str(len(fresh))),)
            )
        )
        if len(self.s) > MODULATOR_FACTOR * self.k:
            self.trace.append(
                TraceRecord(
                    "modulator-cutoff",
                    self.k,
                    self.k,
                    (
                        ("size", str(len(self.s))),
                        ("limit", str(MODULATOR_FACTOR * self.k)),
                    ),
                )
            )
            self.rejected = True

    def rest(self) -> MultiGraph:
        return self.graph.induced_subgraph(set(self.graph.vertices) - self.s)

    def _rest_components(self) -> list[set[int]]:
        return connected_components(self.rest())

    def split(self) -> tuple[list[set[int]], set[int]]:
        """Clique components of size >= 3 outside S, and the other non-S
        vertices (the forest side)."""
        rest = self.rest()
        cliques = []
        v2: set[int] = set()
        for comp in connected_components(rest):
            kind = classify_component(rest, comp)
            if kind is ComponentKind.CLIQUE:
                cliques.append(comp)
            else:
                v2 |= comp
        return cliques, v2

    def _record(self, rule: str, k_before: int, params: list[tuple[str, str]]):
        rec = TraceRecord(rule, k_before, self.k, tuple(params))
        self.trace.append(rec)
        if self.k < 0:
            self.rejected = True
        return rec

    # reduction rules, in priority order ------------------------------------

    def apply_multiplicity(self) -> TraceRecord | None:
        """Cap every edge multiplicity at two."""
        fat = [(u, v, m) for u, v, m in self.graph.edges() if m > 2]
        if not fat:
            return None
        for u, v, _ in fat:
            self.graph.set_multiplicity(u, v, 2)
        return self._record(
            "multiplicity",
            self.k,
            [("edges", ",".join(f"{u}-{v}:{m}" for u, v, m in fat))],
        )

    def apply_isolated_component(self) -> TraceRecord | None:
        """Delete one component of G - S with no neighbor in S."""
        for comp in self._rest_components():
            touches = any(
                self.graph.multiplicity(u, z) >= 1 for u in comp for z in self.s
            )
            if not touches:
                self.graph.delete_vertices(comp)
                return self._record(
                    "isolated-component",
                    self.k,
                    [("vertices", _ids(comp))],
                )
        return None

    def apply_pendant_dedup(self) -> TraceRecord | None:
        """If a vertex has two pendant neighbors, delete one of them."""
        for u in self.graph.vertices:
            pendants = [
                w for w in self.graph.neighbors(u) if self.graph.degree(w) == 1
            ]
            if len(pendants) >= 2:
                doomed = pendants[-1]
                self.graph.delete_vertex(doomed)
                return self._record(
                    "pendant-dedup",
                    self.k,
                    [("anchor", str(u)), ("removed", str(doomed))],
                )
        return None

    def apply_tail(self) -> TraceRecord | None:
        """Truncate a degree-2 tail of 3+ vertices down to anchor plus one."""
        tail = find_degree2_tail(self.graph, 3)
        if tail is None:
            return None
        path = tail.vertices
        removed = path[2:]
        self.graph.delete_vertices(removed)
        return self._record(
            "tail",
            self.k,
            [("path", _ids(path)), ("removed", _ids(removed))],
        )

    def apply_overbridge(self) -> TraceRecord | None:
        """Shorten a degree-2 overbridge of 5+ vertices to 4, bridging the gap."""
        bridge = find_degree2_overbridge(self.graph, 5)
        if bridge is None:
            return None
        path = bridge.vertices
        removed = path[2:-2]
        keep_a, keep_b = path[1], path[-2]
        self.graph.delete_vertices(removed)
        self.graph.add_edge(keep_a, keep_b)
        return self._record(
            "overbridge",
            self.k,
            [
                ("path", _ids(path)),
                ("removed", _ids(removed)),
                ("added", f"{keep_a}-{keep_b}"),
            ],
        )

    def apply_clique_expansion(self) -> TraceRecord | None:
        """With at least 2|S| clique components, find S-vertices that can be
        charged two private components each and delete them, paying from k."""
        cliques, _ = self.split()
        if not self.s or len(cliques) < 2 * len(self.s):
            return None
        reps = {min(comp): comp for comp in cliques}
        edges = []
        for z in sorted(self.s):
            for rep, comp in sorted(reps.items()):
                if any(self.graph.multiplicity(z, u) >= 1 for u in comp):
                    edges.append((z, rep))
        aux = Bipartition(sorted(self.s), sorted(reps), edges)
        cert = q_expansion(aux, 2)
        k_before = self.k
        doomed = sorted(cert.x_hat)
        self.graph.delete_vertices(doomed)
        self.s -= set(doomed)
        self.k -= len(doomed)
        return self._record(
            "clique-expansion",
            k_before,
            [
                ("removed", _ids(doomed)),
                ("components", _ids(sorted(cert.y_hat))),
            ],
        )

    def apply_unmarked_clique_vertex(self) -> TraceRecord | None:
        """Delete one clique vertex left unmarked by the profile marking."""
        cliques, _ = self.split()
        for comp in sorted(cliques, key=min):
            marking = mark_clique(self.graph, self.s, self.k, comp)
            unmarked = sorted(comp - set(marking.marked))
            if unmarked:
                doomed = unmarked[0]
                self.graph.delete_vertex(doomed)
                return self._record(
                    "unmarked-clique-vertex",
                    self.k,
                    [
                        ("clique", str(min(comp))),
                        ("marked", str(len(marking.marked))),
                        ("removed", str(doomed)),
                    ],
                )
        return None

    def apply_far_leaf(self) -> TraceRecord | None:
        """Delete a forest-side leaf when neither it nor its tree neighbor
        touches S."""
        _, v2 = self.split()
        forest = self.graph.induced_subgraph(v2)
        for v in forest.vertices:
            nbrs = forest.neighbors(v)
            if len(nbrs) != 1 or forest.multiplicity(v, nbrs[0]) != 1:
                continue
            u = nbrs[0]
            if any(self.graph.multiplicity(v, z) >= 1 for z in self.s):
                continue
            if any(self.graph.multiplicity(u, z) >= 1 for z in self.s):
                continue
            self.graph.delete_vertex(v)
            return self._record("far-leaf", self.k, [("removed", str(v))])
        return None

    def apply_pendant_tree(self) -> TraceRecord | None:
        """Collapse a tree component held by a single outside edge onto its
        attachment vertex."""
        _, v2 = self.split()
        forest = self.graph.induced_subgraph(v2)
        for comp in connected_components(forest):
            if len(comp) < 2:
                continue
            boundary = [
                (u, z, self.graph.multiplicity(u, z))
                for u in sorted(comp)
                for z in sorted(set(self.graph.neighbors(u)) - comp)
            ]
            if len(boundary) != 1 or boundary[0][2] != 1:
                continue
            keep = boundary[0][0]
            removed = sorted(comp - {keep})
            self.graph.delete_vertices(removed)
            return self._record(
                "pendant-tree",
                self.k,
                [("kept", str(keep)), ("removed", _ids(removed))],
            )
        return None

    def apply_flower(self) -> TraceRecord | None:
        """Delete an S-vertex carrying 3k+2 cycles through it on the forest
        side that pairwise share only that vertex; pays one from k."""
        _, v2 = self.split()
        order = 3 * self.k + 1
        for v in sorted(self.s):
            sub = self._forest_plus(v, v2)
            result = flower_or_hitting_set(sub, v, order)
            if result.is_flower:
                k_before = self.k
                self.graph.delete_vertex(v)
                self.s.discard(v)
                self.k -= 1
                return self._record(
                    "flower",
                    k_before,
                    [("center", str(v)), ("order", str(order + 1))],
                )
        return None

    def apply_tree_expansion(self) -> TraceRecord | None:
        """Rewire an S-vertex of excessive forest-side degree: drop its edges
        into components charged to expansion anchors, and pin it to each
        anchor with a double edge.  Total multiplicity strictly drops."""
        _, v2 = self.split()
        threshold = DEGREE_TRIGGER * (self.k + 1)
        for v in sorted(self.s):
            v2_degree = sum(self.graph.multiplicity(v, u) for u in v2)
            if v2_degree <= threshold:
                continue
            sub = self._forest_plus(v, v2)
            dichotomy = flower_or_hitting_set(sub, v, 3 * self.k + 1)
            if dichotomy.is_flower:
                raise RuntimeError("flower rule should have fired before expansion")
            halo = set(dichotomy.hitting_set)
            if len(halo) > 6 * self.k + 4:
                raise RuntimeError(f"halo of {len(halo)} vertices is out of bounds")
            free_forest = self.graph.induced_subgraph(v2 - halo)
            comps = [
                comp
                for comp in connected_components(free_forest)
                if any(self.graph.multiplicity(v, u) >= 1 for u in comp)
            ]
            left = sorted(halo | (self.s - {v}))
            if len(comps) <= 4 * (len(self.s) + len(halo)):
                raise RuntimeError(
                    f"{len(comps)} attached components contradict the degree trigger"
                )
            reps = {min(comp): comp for comp in comps}
            edges = []
            for h in left:
                for rep, comp in sorted(reps.items()):
                    if any(self.graph.multiplicity(h, u) >= 1 for u in comp):
                        edges.append((h, rep))
            aux = Bipartition(left, sorted(reps), edges)
            cert = new_q_expansion(aux, 4)
            anchors = sorted(cert.x_hat)
            if not anchors:
                continue  # nothing to rewire; shrinking is up to earlier rules
            saturated = sorted({rep for _, rep in cert.matching})
            spare = sorted(set(cert.y_hat) - set(saturated))
            if not spare:
                raise RuntimeError("no unsaturated component left to keep")
            removed_edges = []
            for rep in saturated:
                for u in sorted(reps[rep]):
                    if self.graph.multiplicity(v, u) >= 1:
                        removed_edges.append((v, u))
                        self.graph.remove_edge(v, u)
            for a in anchors:
                self.graph.set_multiplicity(v, a, 2)
            return self._record(
                "tree-expansion",
                self.k,
                [
                    ("center", str(v)),
                    ("halo", str(len(halo))),
                    ("anchors", _ids(anchors)),
                    ("removed-edges", ",".join(f"{x}-{y}" for x, y in removed_edges)),
                    ("kept", str(spare[0])),
                ],
            )
        return None

    def _forest_plus(self, v: int, v2: set[int]) -> MultiGraph:
        """Induced subgraph on {v} union V2, with loops at v stripped so the
        dichotomy sees only forest-side cycles."""
        sub = self.graph.induced_subgraph(v2 | {v})
        sub.clear_loops(v)
        return sub

    RULES = (
        ("multiplicity", "apply_multiplicity"),
        ("isolated-component", "apply_isolated_component"),
        ("pendant-dedup", "apply_pendant_dedup"),
        ("tail", "apply_tail"),
        ("overbridge", "apply_overbridge"),
        ("clique-expansion", "apply_clique_expansion"),
        ("unmarked-clique-vertex", "apply_unmarked_clique_vertex"),
        ("far-leaf", "apply_far_leaf"),
        ("pendant-tree", "apply_pendant_tree"),
        ("flower", "apply_flower"),
        ("tree-expansion", "apply_tree_expansion"),
    )

    def step(self) -> TraceRecord | None:
        """Apply the first applicable rule; None at fixpoint."""
        potential = (self.graph.vertex_count, self.graph.total_multiplicity())
        for _, method in self.RULES:
            rec = getattr(self, method)()
            if rec is None:
                continue
            self.s &= set(self.graph.vertices)
            after = (self.graph.vertex_count, self.graph.total_multiplicity())
            if not after < potential:
                raise RuntimeError(f"rule {rec.rule} did not shrink the instance")
            if not self.rejected:
                self._repair_modulator()
            return rec
        return None

    def run(self) -> None:
        while not self.rejected:
            if self.step() is None:
                break

    # fixpoint checks --------------------------------------------------------

    def structural_violations(self) -> list[str]:
        return structural_violations(self.graph, self.s)

    def size_violations(self) -> list[str]:
        problems = []
        cliques, v2 = self.split()
        s_size = len(self.s)
        if len(cliques) > 2 * s_size:
            problems.append(f"{len(cliques)} clique components exceed 2|S|")
        v1_size = sum(len(c) for c in cliques)
        if v1_size > 2 * s_size * eps(s_size, self.k):
            problems.append(f"|V1| = {v1_size} exceeds 2|S|*eps(k)")
        if len(v2) > 25 * DEGREE_TRIGGER * (self.k + 1) * s_size:
            problems.append(f"|V2| = {len(v2)} exceeds 1500(k+1)|S|")
        return problems


def structural_violations(graph: MultiGraph, s: set[int]) -> list[str]:
    """Check the fixpoint structure of a kernel against its modulator."""
    problems = []
    if any(m > 2 for _, _, m in graph.edges()):
        problems.append("an edge multiplicity exceeds two")
    for u in graph.vertices:
        pendants = [w for w in graph.neighbors(u) if graph.degree(w) == 1]
        if len(pendants) > 1:
            problems.append(f"vertex {u} keeps {len(pendants)} pendant neighbors")
    if find_degree2_tail(graph, 3) is not None:
        problems.append("a degree-2 tail of 3+ vertices survives")
    if find_degree2_overbridge(graph, 5) is not None:
        problems.append("a degree-2 overbridge of 5+ vertices survives")
    rest = graph.induced_subgraph(set(graph.vertices) - set(s))
    for comp in connected_components(rest):
        if not any(graph.multiplicity(u, z) >= 1 for u in comp for z in s):
            problems.append(f"component {sorted(comp)} does not touch S")
    return problems


def kernelize(instance: Instance, modulator: set[int] | None = None) -> KernelResult:
    """Run the full pipeline on an instance.

    Computes the modulator (factor 6) unless one is supplied, rejects when
    it exceeds 6k by emitting the canonical no-instance, and otherwise
    applies the rules to a fixpoint, asserting the structural and size
    invariants on the result.
    """
    engine = KernelEngine(instance, modulator)
    if len(engine.s) > MODULATOR_FACTOR * instance.k:
        rec = TraceRecord(
            "modulator-cutoff",
            instance.k,
            instance.k,
            (
                ("size", str(len(engine.s))),
                ("limit", str(MODULATOR_FACTOR * instance.k)),
            ),
        )
        return _reject((rec,))
    engine.run()
    if engine.rejected:
        return _reject(tuple(engine.trace))
    problems = engine.structural_violations() + engine.size_violations()
    if problems:
        raise RuntimeError(f"kernel violates fixpoint invariants: {problems}")
    return KernelResult(
        instance=Instance(engine.graph, engine.k),
        no_instance=False,
        trace=tuple(engine.trace),
        modulator=frozenset(engine.s),
        bound=size_bound(len(engine.s), engine.k),
    )


def _reject(trace: tuple[TraceRecord, ...]) -> KernelResult:
    return KernelResult(
        instance=canonical_no_instance(),
        no_instance=True,
        trace=trace,
        modulator=frozenset(),
        bound=4,
    )


def replay(instance: Instance, result: KernelResult) -> Instance:
    """Re-apply a trace to the original instance; must reproduce the output."""
    if result.no_instance:
        return canonical_no_instance()
    graph = instance.graph.copy()
    k = instance.k
    for rec in result.trace:
        if rec.k_before != k:
            raise ValueError(f"trace expects k={rec.k_before}, replay has k={k}")
        if rec.rule == "multiplicity":
            for token in rec.get("edges").split(","):
                pair, _, _ = token.partition(":")
                u, v = (int(x) for x in pair.split("-"))
                graph.set_multiplicity(u, v, 2)
        elif rec.rule == "isolated-component":
            graph.delete_vertices(_parse_ids(rec.get("vertices")))
        elif rec.rule in ("tail", "pendant-tree"):
            graph.delete_vertices(_parse_ids(rec.get("removed")))
        elif rec.rule in ("pendant-dedup", "unmarked-clique-vertex", "far-leaf"):
            graph.delete_vertex(int(rec.get("removed")))
        elif rec.rule == "overbridge":
            graph.delete_vertices(_parse_ids(rec.get("removed")))
            a, b = (int(x) for x in rec.get("added").split("-"))
            graph.add_edge(a, b)
        elif rec.rule == "clique-expansion":
            removed = _parse_ids(rec.get("removed"))
            graph.delete_vertices(removed)
            k -= len(removed)
        elif rec.rule == "flower":
            graph.delete_vertex(int(rec.get("center")))
            k -= 1
        elif rec.rule == "tree-expansion":
            center = int(rec.get("center"))
            for token in rec.get("removed-edges").split(","):
                u, v = (int(x) for x in token.split("-"))
                graph.remove_edge(u, v)
            for a in _parse_ids(rec.get("anchors")):
                graph.set_multiplicity(center, a, 2)
        elif rec.rule in ("modulator-cutoff", "modulator-repair"):
            pass
        else:
            raise ValueError(f"unknown rule {rec.rule!r} in trace")
        if rec.k_after != k:
            raise ValueError(f"trace expects k={rec.k_after} after {rec.rule}")
    return Instance(graph, k)


def _ids(vs) -> str:
    return ",".join(str(v) for v in vs)


def _parse_ids(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]
