"""Matching-based subroutines: q-expansions and the flower/hitting-set dichotomy.

Both expansion variants run one max-flow (source -> A at capacity q, unit
edges A -> B, B -> sink at capacity 1) and read the answer off residual
reachability; every certificate is re-checked by an independent verifier
before it is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import MultiGraph

_EXHAUSTIVE_LIMIT = 20


@dataclass
class Bipartition:
    """A bipartite graph on hashable labels, A-side versus B-side."""

    a_side: list
    b_side: list
    edges: list[tuple]

    def __post_init__(self) -> None:
        a, b = set(self.a_side), set(self.b_side)
        if len(a) != len(self.a_side) or len(b) != len(self.b_side):
            raise ValueError("duplicate labels inside a side")
        if a & b:
            raise ValueError("sides must be disjoint")
        seen = set()
        for u, v in self.edges:
            if u not in a or v not in b:
                raise ValueError(f"edge ({u!r}, {v!r}) does not cross the sides")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u!r}, {v!r})")
            seen.add((u, v))

    def neighbors_of_a(self, a) -> set:
        return {v for u, v in self.edges if u == a}

    def neighbors_of_b(self, b) -> set:
        return {u for u, v in self.edges if v == b}


@dataclass(frozen=True)
class ExpansionCertificate:
    """q-expansion of x_hat into y_hat: each x_hat vertex owns exactly q
    matching edges, q*|x_hat| distinct y_hat vertices are saturated, and
    y_hat has no neighbor outside x_hat."""

    x_hat: frozenset
    y_hat: frozenset
    matching: frozenset
    q: int


def verify_expansion(
    h: Bipartition, cert: ExpansionCertificate, *, new_variant: bool
) -> list[str]:
    """Return human-readable contract violations; empty list means valid."""
    violations = []
    edge_set = set(h.edges)
    if not cert.x_hat <= set(h.a_side):
        violations.append("x_hat not contained in A")
    if not cert.y_hat <= set(h.b_side):
        violations.append("y_hat not contained in B")
    for u, v in cert.matching:
        if (u, v) not in edge_set:
            violations.append(f"matching edge ({u!r}, {v!r}) not in graph")
        if u not in cert.x_hat or v not in cert.y_hat:
            violations.append(f"matching edge ({u!r}, {v!r}) leaves x_hat/y_hat")
    for a in sorted(cert.x_hat, key=repr):
        deg = sum(1 for u, _ in cert.matching if u == a)
        if deg != cert.q:
            violations.append(f"{a!r} is incident to {deg} matching edges, not q")
    saturated = {v for _, v in cert.matching}
    if len(saturated) != len(cert.matching):
        violations.append("some y_hat vertex is doubly saturated")
    if len(saturated) != cert.q * len(cert.x_hat):
        violations.append("saturated y_hat count differs from q*|x_hat|")
    for b in sorted(cert.y_hat, key=repr):
        if not h.neighbors_of_b(b) <= cert.x_hat:
            violations.append(f"{b!r} has a neighbor outside x_hat")
    if new_variant:
        spare_b = len(h.b_side) - len(cert.y_hat)
        spare_a = len(h.a_side) - len(cert.x_hat)
        if spare_b > cert.q * spare_a:
            violations.append("deficiency bound |B \\ y_hat| <= q*|A \\ x_hat| fails")
    elif not cert.x_hat:
        violations.append("x_hat is empty")
    return violations


class _FlowNetwork:
    """Minimal Dinic implementation on small integer-capacity networks."""

    def __init__(self, n: int):
        self.n = n
        self.targets: list[int] = []
        self.caps: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        idx = len(self.targets)
        self.targets += [v, u]
        self.caps += [cap, 0]
        self.out[u].append(idx)
        self.out[v].append(idx + 1)
        return idx

    def flow_on(self, idx: int) -> int:
        return self.caps[idx + 1]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            frontier = [s]
            while frontier:
                nxt = []
                for u in frontier:
                    for idx in self.out[u]:
                        v = self.targets[idx]
                        if self.caps[idx] > 0 and level[v] < 0:
                            level[v] = level[u] + 1
                            nxt.append(v)
                frontier = nxt
            if level[t] < 0:
                return total
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.out[u]):
                    idx = self.out[u][it[u]]
                    v = self.targets[idx]
                    if self.caps[idx] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.caps[idx]))
                        if got:
                            self.caps[idx] -= got
                            self.caps[idx ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 30)
                if not pushed:
                    break
                total += pushed

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for idx in self.out[u]:
                v = self.targets[idx]
                if self.caps[idx] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def _run_flow(h: Bipartition, q: int):
    a_list = sorted(h.a_side, key=repr)
    b_list = sorted(h.b_side, key=repr)
    a_idx = {a: 1 + i for i, a in enumerate(a_list)}
    b_idx = {b: 1 + len(a_list) + i for i, b in enumerate(b_list)}
    t = 1 + len(a_list) + len(b_list)
    net = _FlowNetwork(t + 1)
    for a in a_list:
        net.add_edge(0, a_idx[a], q)
    pair_edges = {}
    for a in a_list:
        for b in sorted(h.neighbors_of_a(a), key=repr):
            pair_edges[(a, b)] = net.add_edge(a_idx[a], b_idx[b], 1)
    for b in b_list:
        net.add_edge(b_idx[b], t, 1)
    net.max_flow(0, t)
    reached = net.residual_reachable(0)
    reachable_a = {a for a in a_list if a_idx[a] in reached}
    x_hat = frozenset(a for a in a_list if a not in reachable_a)
    shadow = set()
    for a in reachable_a:
        shadow |= h.neighbors_of_a(a)
    y_hat = frozenset(b for b in b_list if b not in shadow)
    matching = frozenset(
        (a, b)
        for (a, b), idx in pair_edges.items()
        if a in x_hat and net.flow_on(idx) > 0
    )
    return ExpansionCertificate(x_hat, y_hat, matching, q)


def q_expansion(h: Bipartition, q: int) -> ExpansionCertificate:
    """Classic expansion: needs |B| >= q|A|, A non-empty, no isolated B-vertex;
    returns a certificate with non-empty x_hat."""
    if q < 1:
        raise ValueError("precondition violated: q >= 1")
    if not h.a_side:
        raise ValueError("precondition violated: A is empty")
    if len(h.b_side) < q * len(h.a_side):
        raise ValueError("precondition violated: |B| < q|A|")
    isolated = [b for b in h.b_side if not h.neighbors_of_b(b)]
    if isolated:
        raise ValueError(
            f"precondition violated: isolated vertex in B ({isolated[0]!r})"
        )
    cert = _run_flow(h, q)
    violations = verify_expansion(h, cert, new_variant=False)
    if violations:
        raise RuntimeError(f"expansion construction broke its contract: {violations}")
    return cert


def new_q_expansion(h: Bipartition, q: int) -> ExpansionCertificate:
    """Expansion without size or isolation preconditions; x_hat/y_hat may be
    empty and |B \\ y_hat| <= q * |A \\ x_hat| always holds."""
    if q < 1:
        raise ValueError("precondition violated: q >= 1")
    cert = _run_flow(h, q)
    violations = verify_expansion(h, cert, new_variant=True)
    if not violations:
        return cert
    if len(h.a_side) + len(h.b_side) <= _EXHAUSTIVE_LIMIT:
        cert = _exhaustive_new_expansion(h, q)
        if cert is not None:
            return cert
    raise RuntimeError(f"expansion construction broke its contract: {violations}")


def _exhaustive_new_expansion(h: Bipartition, q: int) -> ExpansionCertificate | None:
    a_list = sorted(h.a_side, key=repr)
    for size in range(len(a_list), -1, -1):
        for x in itertools.combinations(a_list, size):
            x_set = set(x)
            y = [b for b in h.b_side if h.neighbors_of_b(b) <= x_set]
            if len(h.b_side) - len(y) > q * (len(a_list) - size):
                continue
            sub = Bipartition(
                sorted(x_set, key=repr),
                sorted(y, key=repr),
                [(u, v) for u, v in h.edges if u in x_set and v in set(y)],
            )
            cert = _run_flow(sub, q)
            if cert.x_hat != x_set:
                continue
            full = ExpansionCertificate(
                frozenset(x_set), frozenset(y), cert.matching, q
            )
            if not verify_expansion(h, full, new_variant=True):
                return full
    return None


@dataclass
class FlowerResult:
    """Either `petals`: cycles through the core sharing only the core, or
    `hitting_set`: vertices (core excluded) meeting every cycle through it."""

    petals: list[list[int]] | None = None
    hitting_set: set[int] | None = None

    @property
    def is_flower(self) -> bool:
        return self.petals is not None


def flower_or_hitting_set(g: MultiGraph, v: int, order: int) -> FlowerResult:
    """On a graph that is a forest plus the apex v, either pack order+1
    cycles through v that pairwise share only v, or return a hitting set Z
    with |Z| <= 2*order, no cycle through v in g - Z, and at most 2*order
    edges between v and Z.

    Petals are packed greedily bottom-up inside each tree: two dangling
    terminal paths meeting lowest are joined, and the join vertex goes into
    Z.  On trees this greedy is a maximum packing, so the dichotomy is exact.
    """
    if v not in g:
        raise ValueError(f"unknown vertex id {v!r}")
    if order < 0:
        raise ValueError("order must be non-negative")
    rest = g.induced_subgraph(set(g.vertices) - {v})
    if not rest.is_simple():
        raise ValueError("graph minus the core must be a forest (it is not simple)")
    for comp in _forest_components(rest):
        size = len(comp)
        edge_sum = sum(
            1 for u in comp for w in rest.neighbors(u) if u < w
        )
        if edge_sum != size - 1:
            raise ValueError("graph minus the core must be a forest")

    petals: list[list[int]] = [[v] for _ in range(g.loop_count(v))]
    z: set[int] = set()

    for comp in _forest_components(rest):
        if not any(g.multiplicity(v, u) for u in comp):
            continue
        root = min(comp)
        parent: dict[int, int | None] = {root: None}
        bfs = [root]
        for u in bfs:
            for w in rest.neighbors(u):
                if w not in parent:
                    parent[w] = u
                    bfs.append(w)
        children: dict[int, list[int]] = {u: [] for u in comp}
        for u in bfs[1:]:
            children[parent[u]].append(u)
        dangle: dict[int, list[int] | None] = {}
        for x in reversed(bfs):
            hanging = [dangle[c] for c in sorted(children[x]) if dangle[c] is not None]
            if g.multiplicity(v, x) >= 2:
                petals.append([v, x])
                z.add(x)
                dangle[x] = None
                continue
            if g.multiplicity(v, x) == 1:
                hanging.append([])
            if len(hanging) >= 2:
                petals.append([v] + hanging[0] + [x] + hanging[1][::-1])
                z.add(x)
                dangle[x] = None
            elif len(hanging) == 1:
                dangle[x] = hanging[0] + [x]
            else:
                dangle[x] = None

    if len(petals) >= order + 1:
        return FlowerResult(petals=petals[: order + 1])
    if g.loop_count(v):
        raise ValueError("self-loop at the core cannot be hit; too few petals")
    return FlowerResult(hitting_set=z)


def _forest_components(g: MultiGraph) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def verify_flower_result(
    g: MultiGraph, v: int, order: int, result: FlowerResult
) -> list[str]:
    """Independent check of the dichotomy contract; empty list means valid."""
    violations = []
    if result.is_flower:
        petals = result.petals
        if len(petals) < order + 1:
            violations.append(f"only {len(petals)} petals, need {order + 1}")
        loop_petals = sum(1 for petal in petals if len(petal) == 1)
        if loop_petals > g.loop_count(v):
            violations.append("more loop petals than loops at the core")
        used: set[int] = set()
        for petal in petals:
            if petal[0] != v:
                violations.append(f"petal {petal} does not start at the core")
                continue
            if not _is_cycle_through(g, petal):
                violations.append(f"petal {petal} is not a cycle")
            others = set(petal[1:])
            if len(others) != len(petal) - 1 or v in others:
                violations.append(f"petal {petal} repeats vertices")
            if used & others:
                violations.append(f"petal {petal} shares vertices beyond the core")
            used |= others
    else:
        z = result.hitting_set
        if v in z:
            violations.append("hitting set contains the core")
        if len(z) > 2 * order:
            violations.append(f"hitting set has {len(z)} > {2 * order} vertices")
        core_edges = sum(g.multiplicity(v, u) for u in z)
        if core_edges > 2 * order:
            violations.append(f"{core_edges} > {2 * order} edges join core to Z")
        rest = g.induced_subgraph(set(g.vertices) - z)
        if _has_cycle_through(rest, v):
            violations.append("a cycle through the core survives Z")
    return violations


def _is_cycle_through(g: MultiGraph, cycle: list[int]) -> bool:
    if len(cycle) == 1:
        return g.loop_count(cycle[0]) >= 1
    if len(cycle) == 2:
        return g.multiplicity(cycle[0], cycle[1]) >= 2
    return all(
        g.multiplicity(cycle[i], cycle[(i + 1) % len(cycle)]) >= 1
        for i in range(len(cycle))
    )


def _has_cycle_through(g: MultiGraph, v: int) -> bool:
    """Does any cycle (loop, parallel pair, or longer) pass through v?

    A cycle of length >= 3 passes through v exactly when two distinct
    neighbors of v stay connected once v is removed.
    """
    if v not in g:
        return False
    if g.loop_count(v):
        return True
    nbrs = g.neighbors(v)
    if any(g.multiplicity(v, u) >= 2 for u in nbrs):
        return True
    if len(nbrs) < 2:
        return False
    rest = g.induced_subgraph(set(g.vertices) - {v})
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(_forest_components(rest)):
        for u in comp:
            comp_of[u] = i
    hit = [comp_of[u] for u in nbrs]
    return len(set(hit)) < len(hit)
