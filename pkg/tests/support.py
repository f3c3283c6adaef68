"""Shared independent oracles and instance factories for the test suite.

Everything here recomputes answers from first principles (plain subset
enumeration, bitmask scans, unique forest paths) so the library code under
test never checks itself.
"""

from __future__ import annotations

import itertools
import random

from ctvd.graph import Instance, MultiGraph, is_solution


def build_graph(n: int, edges=(), loops=(), mults=()):
    """Graph on ids 0..n-1 with simple `edges`, `loops`, and (u, v, m) `mults`."""
    g = MultiGraph()
    ids = g.add_vertices(n)
    for u, v in edges:
        g.add_edge(ids[u], ids[v])
    for v in loops:
        g.add_loop(ids[v])
    for u, v, m in mults:
        g.add_edge(ids[u], ids[v], m)
    return g


def cycle_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> MultiGraph:
    return build_graph(n, list(itertools.combinations(range(n), 2)))


def paw_graph() -> MultiGraph:
    return build_graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def diamond_graph() -> MultiGraph:
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def naive_feasible(g: MultiGraph, k: int) -> bool:
    """Definitional oracle: enumerate every subset of size at most k."""
    verts = g.vertices
    for size in range(0, min(k, len(verts)) + 1):
        for combo in itertools.combinations(verts, size):
            if is_solution(g, set(combo), k):
                return True
    return False


def adjacency_masks(g: MultiGraph) -> tuple[list[int], list[int]]:
    """Bitmask adjacency over sorted vertex positions (simple graphs only)."""
    verts = list(g.vertices)
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for u, v, _ in g.edges():
        masks[pos[u]] |= 1 << pos[v]
        masks[pos[v]] |= 1 << pos[u]
    return verts, masks


def _connected_positions(masks, combo) -> bool:
    inside = set(combo)
    seen = {combo[0]}
    stack = [combo[0]]
    while stack:
        i = stack.pop()
        for j in inside:
            if j not in seen and masks[i] >> j & 1:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(inside)


def forbidden_induced_subgraph(g: MultiGraph) -> bool:
    """Exhaustive scan for an induced paw, diamond, or chordless cycle >= 4."""
    verts, masks = adjacency_masks(g)
    n = len(verts)
    for size in range(4, n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            degs = [(masks[i] & mask).bit_count() for i in combo]
            edges = sum(degs) // 2
            if size == 4 and edges == 4 and sorted(degs) == [1, 2, 2, 3]:
                return True  # paw
            if size == 4 and edges == 5 and sorted(degs) == [2, 2, 3, 3]:
                return True  # diamond
            if (
                edges == size
                and all(d == 2 for d in degs)
                and _connected_positions(masks, combo)
            ):
                return True  # induced cycle of this length
    return False


def forest_path(forest: MultiGraph, u: int, w: int) -> list[int] | None:
    """Unique u..w path in a forest, or None when disconnected."""
    prev = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == w:
            path = [w]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for y in forest.neighbors(x):
            if y not in prev:
                prev[y] = x
                stack.append(y)
    return None


def max_petal_packing(g: MultiGraph, v: int) -> int:
    """Brute-force maximum number of cycles through v sharing only v."""
    rest = g.induced_subgraph(set(g.vertices) - {v})
    nbrs = g.neighbors(v)
    candidates: list[frozenset[int]] = []
    for u in nbrs:
        if g.multiplicity(v, u) >= 2:
            candidates.append(frozenset([u]))
    for u, w in itertools.combinations(nbrs, 2):
        path = forest_path(rest, u, w)
        if path is not None:
            candidates.append(frozenset(path))
    candidates.sort(key=len)
    best = 0

    def recurse(i: int, used: frozenset[int], count: int) -> None:
        nonlocal best
        best = max(best, count)
        if i >= len(candidates) or count + len(candidates) - i <= best:
            return
        if not (candidates[i] & used):
            recurse(i + 1, used | candidates[i], count + 1)
        recurse(i + 1, used, count)

    recurse(0, frozenset(), 0)
    return best + g.loop_count(v)


def random_forest_with_apex(rng: random.Random, max_n: int):
    """A random forest plus an apex vertex wired into it (with occasional
    double edges); returns (graph, apex)."""
    g = MultiGraph()
    apex = g.add_vertex()
    n = rng.randint(0, max_n - 1)
    members = g.add_vertices(n)
    for i, u in enumerate(members):
        if i and rng.random() < 0.75:
            g.add_edge(u, rng.choice(members[:i]))
    for u in members:
        roll = rng.random()
        if roll < 0.35:
            g.add_edge(apex, u)
        elif roll < 0.45:
            g.add_edge(apex, u, 2)
    return g, apex


# Factories for engine states where one specific rule is guaranteed to fire.
# Each returns (instance, modulator, rule_method_name).


def state_multiplicity(rng: random.Random):
    g = MultiGraph()
    u, v = g.add_vertices(2)
    g.add_edge(u, v, rng.randint(3, 5))
    for _ in range(rng.randint(0, 2)):
        extra = g.add_vertices(3)
        g.add_edge(extra[0], extra[1])
        g.add_edge(extra[1], extra[2])
        g.add_edge(extra[0], extra[2])
    return Instance(g, rng.randint(1, 3)), {u}, "apply_multiplicity"


def state_isolated_component(rng: random.Random):
    g = MultiGraph()
    s = g.add_vertex()
    g.add_loop(s)
    for _ in range(rng.randint(1, 3)):
        tri = g.add_vertices(3)
        g.add_edge(tri[0], tri[1])
        g.add_edge(tri[1], tri[2])
        g.add_edge(tri[0], tri[2])
    return Instance(g, rng.randint(1, 3)), {s}, "apply_isolated_component"


def state_pendant_dedup(rng: random.Random):
    g = MultiGraph()
    u, a, b = g.add_vertices(3)
    g.add_edge(u, a)
    g.add_edge(u, b)
    g.add_edge(a, b)
    for _ in range(rng.randint(2, 4)):
        p = g.add_vertex()
        g.add_edge(u, p)
    return Instance(g, rng.randint(1, 2)), {u}, "apply_pendant_dedup"


def state_tail(rng: random.Random):
    g = MultiGraph()
    x, y, z = g.add_vertices(3)
    g.add_edge(x, y)
    g.add_edge(y, z)
    g.add_edge(x, z)
    chain = g.add_vertices(rng.randint(3, 6))
    g.add_edge(x, chain[0])
    for i in range(1, len(chain)):
        g.add_edge(chain[i - 1], chain[i])
    return Instance(g, rng.randint(1, 2)), {x}, "apply_tail"


def state_overbridge(rng: random.Random):
    g = MultiGraph()
    t1 = g.add_vertices(3)
    t2 = g.add_vertices(3)
    for t in (t1, t2):
        g.add_edge(t[0], t[1])
        g.add_edge(t[1], t[2])
        g.add_edge(t[0], t[2])
    chain = g.add_vertices(rng.randint(3, 6))
    g.add_edge(t1[0], chain[0])
    for i in range(1, len(chain)):
        g.add_edge(chain[i - 1], chain[i])
    g.add_edge(chain[-1], t2[0])
    return Instance(g, rng.randint(1, 2)), {t1[0], t2[0]}, "apply_overbridge"


def state_clique_expansion(rng: random.Random):
    g = MultiGraph()
    s = g.add_vertex()
    for _ in range(rng.randint(2, 4)):
        size = rng.randint(3, 4)
        members = g.add_vertices(size)
        for i in range(size):
            for j in range(i + 1, size):
                g.add_edge(members[i], members[j])
        g.add_edge(s, members[0])
    return Instance(g, rng.randint(1, 2)), {s}, "apply_clique_expansion"


def state_unmarked_clique(rng: random.Random):
    g = MultiGraph()
    ring = g.add_vertices(4)
    for i in range(4):
        g.add_edge(ring[i], ring[(i + 1) % 4])
    k = rng.randint(0, 1)
    size = 11 + k + rng.randint(1, 3)
    members = g.add_vertices(size)
    for i in range(size):
        for j in range(i + 1, size):
            g.add_edge(members[i], members[j])
    g.add_edge(ring[0], members[0])
    return Instance(g, k), set(ring), "apply_unmarked_clique_vertex"


def state_far_leaf(rng: random.Random):
    g = MultiGraph()
    ring = g.add_vertices(4)
    for i in range(4):
        g.add_edge(ring[i], ring[(i + 1) % 4])
    chain = g.add_vertices(rng.randint(3, 5))
    g.add_edge(ring[0], chain[0])
    for i in range(1, len(chain)):
        g.add_edge(chain[i - 1], chain[i])
    return Instance(g, rng.randint(1, 2)), set(ring), "apply_far_leaf"


def state_pendant_tree(rng: random.Random):
    g = MultiGraph()
    ring = g.add_vertices(4)
    for i in range(4):
        g.add_edge(ring[i], ring[(i + 1) % 4])
    root = g.add_vertex()
    g.add_edge(ring[0], root)
    for _ in range(rng.randint(1, 4)):
        leaf = g.add_vertex()
        g.add_edge(root, leaf)
    return Instance(g, rng.randint(1, 2)), set(ring), "apply_pendant_tree"


def state_flower(rng: random.Random):
    g = MultiGraph()
    v = g.add_vertex()
    k = rng.randint(0, 2)
    for _ in range(3 * k + 2 + rng.randint(0, 2)):
        x, y = g.add_vertices(2)
        g.add_edge(x, y)
        g.add_edge(v, x)
        g.add_edge(v, y)
    return Instance(g, k), {v}, "apply_flower"


def state_tree_expansion(rng: random.Random):
    g = MultiGraph()
    v, w = g.add_vertices(2)
    g.add_edge(v, w)
    for _ in range(61 + rng.randint(0, 5)):
        a, b = g.add_vertices(2)
        g.add_edge(a, b)
        g.add_edge(v, a)
        g.add_edge(w, b)
    return Instance(g, 0), {v, w}, "apply_tree_expansion"


RULE_STATES = {
    "multiplicity": state_multiplicity,
    "isolated-component": state_isolated_component,
    "pendant-dedup": state_pendant_dedup,
    "tail": state_tail,
    "overbridge": state_overbridge,
    "clique-expansion": state_clique_expansion,
    "unmarked-clique-vertex": state_unmarked_clique,
    "far-leaf": state_far_leaf,
    "pendant-tree": state_pendant_tree,
    "flower": state_flower,
    "tree-expansion": state_tree_expansion,
}
