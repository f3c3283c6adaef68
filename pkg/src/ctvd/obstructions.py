"""Detection of forbidden structures: paws, diamonds, holes, multi-edges, loops.

A graph whose components are all cliques or trees contains none of these; a
connected simple graph that is neither contains an induced paw, diamond, or
chordless cycle of length at least four.  The finders below return one witness
each and are deterministic (smallest-id witnesses first).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .graph import MultiGraph


class ObstructionKind(Enum):
    SELF_LOOP = "self-loop"
    MULTI_EDGE = "multi-edge"
    DIAMOND = "diamond"
    PAW = "paw"
    HOLE = "hole"


class PathKind(Enum):
    TAIL = "tail"
    OVERBRIDGE = "overbridge"


@dataclass(frozen=True)
class Obstruction:
    """A witness that some component is neither a clique nor a tree.

    Witness conventions:
      SELF_LOOP   (v,)
      MULTI_EDGE  (u, v) with multiplicity >= 2
      DIAMOND     (a, b, c, d): every pair adjacent except c-d
      PAW         (a, b, c, p): triangle a,b,c and pendant p attached to a
      HOLE        chordless cycle of length >= 4, in cyclic order
    """

    kind: ObstructionKind
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Degree2Path:
    """A maximal path whose internal vertices all have degree exactly two.

    A tail runs from an anchor of degree > 2 down to a pendant vertex; an
    overbridge connects two (distinct) anchors of degree > 2.
    """

    kind: PathKind
    vertices: tuple[int, ...]


def find_small_obstruction(g: MultiGraph) -> Obstruction | None:
    """Return a self-loop, multi-edge, diamond, paw, or induced C4, in that
    preference order; None if none of these exists."""
    for v, _ in g.loops():
        return Obstruction(ObstructionKind.SELF_LOOP, (v,))
    for u, v, m in g.edges():
        if m >= 2:
            return Obstruction(ObstructionKind.MULTI_EDGE, (u, v))

    # From here on the graph is simple.
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    for u, v, _ in g.edges():
        common = sorted(adj[u] & adj[v])
        for w1, w2 in itertools.combinations(common, 2):
            if w2 not in adj[w1]:
                return Obstruction(ObstructionKind.DIAMOND, (u, v, w1, w2))

    for a, b, c in _triangles(g, adj):
        for x in g.vertices:
            if x in (a, b, c):
                continue
            hits = [t for t in (a, b, c) if x in adj[t]]
            if len(hits) == 1:
                rest = sorted(t for t in (a, b, c) if t != hits[0])
                return Obstruction(
                    ObstructionKind.PAW, (hits[0], rest[0], rest[1], x)
                )

    verts = g.vertices
    for u, w in itertools.combinations(verts, 2):
        if w in adj[u]:
            continue
        common = sorted(adj[u] & adj[w])
        for v1, v2 in itertools.combinations(common, 2):
            if v2 not in adj[v1]:
                return Obstruction(ObstructionKind.HOLE, (u, v1, w, v2))
    return None


def _triangles(g: MultiGraph, adj):
    for u, v, _ in g.edges():
        for w in sorted(adj[u] & adj[v]):
            if w > v:
                yield u, v, w


def find_hole(g: MultiGraph, min_len: int = 4) -> list[int] | None:
    """Find a chordless cycle with at least `min_len` >= 4 vertices.

    Uses a maximum-cardinality-search chordality test as a fast negative; a
    non-chordal graph always yields a hole through some vertex with two
    non-adjacent neighbors.  Lengths above four fall back to an exact
    backtracking search, exponential in the worst case but fine at the small
    scales this library targets.
    """
    if min_len < 4:
        raise ValueError("min_len must be at least 4")
    if not g.is_simple():
        raise ValueError("find_hole requires a simple graph")
    if _is_chordal(g):
        return None
    if min_len == 4:
        hole = _extract_hole(g)
        assert hole is not None
        return hole
    return _long_hole(g, min_len)


def _is_chordal(g: MultiGraph) -> bool:
    verts = g.vertices
    if not verts:
        return True
    adj = {v: set(g.neighbors(v)) for v in verts}
    weight = {v: 0 for v in verts}
    alpha: dict[int, int] = {}
    unnumbered = set(verts)
    for i in range(len(verts), 0, -1):
        z = max(sorted(unnumbered), key=lambda v: weight[v])
        alpha[z] = i
        unnumbered.remove(z)
        for y in adj[z]:
            if y in unnumbered:
                weight[y] += 1
    for v in verts:
        higher = [u for u in adj[v] if alpha[u] > alpha[v]]
        if not higher:
            continue
        m = min(higher, key=lambda u: alpha[u])
        if any(u != m and u not in adj[m] for u in higher):
            return False
    return True


def _extract_hole(g: MultiGraph) -> list[int] | None:
    """Pull some chordless cycle of length >= 4 out of a non-chordal graph."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for v in g.vertices:
        nbrs = sorted(adj[v])
        for x, y in itertools.combinations(nbrs, 2):
            if y in adj[x]:
                continue
            blocked = (adj[v] | {v}) - {x, y}
            path = _shortest_path(adj, x, y, blocked)
            if path is not None:
                return [v] + path
    return None


def _shortest_path(adj, src: int, dst: int, blocked: set[int]) -> list[int] | None:
    if src in blocked or dst in blocked:
        return None
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(adj[u]):
                if w in blocked or w in prev:
                    continue
                prev[w] = u
                if w == dst:
                    path = [w]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                nxt.append(w)
        frontier = nxt
    return None


def _long_hole(g: MultiGraph, min_len: int) -> list[int] | None:
    """Exact search for a chordless cycle of length >= min_len."""
    adj = {v: set(g.neighbors(v)) for v in g.vertices}

    def extend(path: list[int], on_path: set[int]) -> list[int] | None:
        last = path[-1]
        for u in sorted(adj[last]):
            if u in on_path or u < path[0]:
                continue
            if len(path) == 1:
                # u is the second path vertex; its edge to the start is the
                # path edge, not a chord
                found = extend(path + [u], on_path | {u})
                if found is not None:
                    return found
                continue
            if u in adj[path[0]]:
                if len(path) + 1 >= min_len and all(
                    u not in adj[w] for w in path[1:-1]
                ):
                    return path + [u]
                continue
            if any(u in adj[w] for w in path[:-1]):
                continue
            found = extend(path + [u], on_path | {u})
            if found is not None:
                return found
        return None

    for v0 in g.vertices:
        found = extend([v0], {v0})
        if found is not None:
            return found
    return None


def find_any_obstruction(g: MultiGraph) -> Obstruction | None:
    """None iff g is simple and every component is a clique or a tree.

    Once no self-loop, multi-edge, diamond, paw, or induced C4 exists, any
    remaining offense must be a chordless cycle of length >= 5: a chordal,
    paw- and diamond-free connected graph with a triangle is complete, and a
    triangle-free chordal graph is a forest.
    """
    small = find_small_obstruction(g)
    if small is not None:
        return small
    hole = find_hole(g, 4)
    if hole is not None:
        return Obstruction(ObstructionKind.HOLE, tuple(hole))
    return None


def verify_obstruction(g: MultiGraph, obs: Obstruction) -> bool:
    """Independent adjacency check that the witness induces what it claims."""
    vs = obs.vertices
    if len(set(vs)) != len(vs) or any(v not in g for v in vs):
        return False
    kind = obs.kind
    if kind is ObstructionKind.SELF_LOOP:
        return len(vs) == 1 and g.loop_count(vs[0]) >= 1
    if kind is ObstructionKind.MULTI_EDGE:
        return len(vs) == 2 and g.multiplicity(vs[0], vs[1]) >= 2
    if kind is ObstructionKind.DIAMOND:
        if len(vs) != 4:
            return False
        a, b, c, d = vs
        required = {(a, b), (a, c), (a, d), (b, c), (b, d)}
        return all(g.multiplicity(u, v) >= 1 for u, v in required) and (
            g.multiplicity(c, d) == 0
        )
    if kind is ObstructionKind.PAW:
        if len(vs) != 4:
            return False
        a, b, c, p = vs
        tri = all(
            g.multiplicity(u, v) >= 1 for u, v in ((a, b), (a, c), (b, c))
        )
        return (
            tri
            and g.multiplicity(a, p) >= 1
            and g.multiplicity(b, p) == 0
            and g.multiplicity(c, p) == 0
        )
    if kind is ObstructionKind.HOLE:
        n = len(vs)
        if n < 4:
            return False
        for i, u in enumerate(vs):
            for j in range(i + 1, n):
                v = vs[j]
                consecutive = j == i + 1 or (i == 0 and j == n - 1)
                if consecutive != (g.multiplicity(u, v) >= 1):
                    return False
        return True
    return False


def find_degree2_tail(g: MultiGraph, min_len: int) -> Degree2Path | None:
    """Find a maximal path (v1..vl), l >= min_len, with deg(v1) > 2, internal
    degrees exactly 2, and vl pendant."""
    for p in g.vertices:
        if g.degree(p) != 1:
            continue
        chain = [p]
        prev = None
        cur = p
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if len(nxt) != 1:
                break
            step = nxt[0]
            if step in chain:
                break
            chain.append(step)
            if g.degree(step) != 2:
                break
            prev, cur = cur, step
        anchor = chain[-1]
        if g.degree(anchor) > 2 and len(chain) >= min_len:
            return Degree2Path(PathKind.TAIL, tuple(reversed(chain)))
    return None


def find_degree2_overbridge(g: MultiGraph, min_len: int) -> Degree2Path | None:
    """Find a maximal path (v1..vl), l >= min_len, whose internal vertices
    have degree exactly 2 and whose distinct endpoints have degree > 2."""
    visited: set[int] = set()
    for v in g.vertices:
        if v in visited or g.degree(v) != 2 or g.loop_count(v):
            continue
        nbrs = g.neighbors(v)
        if len(nbrs) != 2:
            continue  # both degree units go to one neighbor; not path interior
        left = _walk_chain(g, v, nbrs[0])
        right = _walk_chain(g, v, nbrs[1])
        if left is None or right is None:
            continue
        chain = list(reversed(left)) + [v] + right
        visited.update(w for w in chain if g.degree(w) == 2)
        a, b = chain[0], chain[-1]
        if a == b:
            continue
        if g.degree(a) > 2 and g.degree(b) > 2 and len(chain) >= min_len:
            return Degree2Path(PathKind.OVERBRIDGE, tuple(chain))
    return None


def _walk_chain(g: MultiGraph, start: int, first: int) -> list[int] | None:
    """Walk from start through degree-2 vertices beginning with `first`;
    return the vertices visited, ending at the first non-degree-2 vertex.
    None when the walk loops back (a degree-2 cycle)."""
    if g.multiplicity(start, first) >= 2:
        return None
    seen = {start}
    out = []
    prev, cur = start, first
    while True:
        if cur in seen:
            return None
        out.append(cur)
        seen.add(cur)
        if g.degree(cur) != 2:
            return out
        nbrs = [w for w in g.neighbors(cur) if w != prev]
        if len(nbrs) != 1 or g.multiplicity(cur, nbrs[0]) >= 2:
            return out if g.degree(cur) != 2 else None
        prev, cur = cur, nbrs[0]
