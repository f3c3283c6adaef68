"""Seeded instance generators for campaigns and the CLI."""

from __future__ import annotations

import random

from .graph import Instance, MultiGraph

_DENSITIES = (0.1, 0.2, 0.35, 0.5, 0.7)


def random_instance(rng: random.Random, max_n: int, max_k: int) -> Instance:
    """A mixed-density random multigraph with occasional parallel edges and
    self-loops, plus a budget drawn up to max_k."""
    n = rng.randint(1, max_n)
    k = rng.randint(0, max_k)
    p = rng.choice(_DENSITIES)
    g = MultiGraph()
    ids = g.add_vertices(n)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(ids[i], ids[j])
                edges.append((ids[i], ids[j]))
    if edges and rng.random() < 0.3:
        for _ in range(rng.randint(1, 3)):
            u, v = rng.choice(edges)
            g.add_edge(u, v, rng.randint(1, 2))
    if rng.random() < 0.15:
        g.add_loop(rng.choice(ids))
    return Instance(g, k)


def planted_instance(
    rng: random.Random, cliques: int, trees: int, noise: int, k: int
) -> Instance:
    """Disjoint random cliques and trees plus noise vertices wired across
    them; deleting the noise always restores a clean graph, so the optimum
    is at most `noise`."""
    g = MultiGraph()
    core: list[int] = []
    for _ in range(cliques):
        members = g.add_vertices(rng.randint(3, 6))
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                g.add_edge(members[i], members[j])
        core += members
    for _ in range(trees):
        members = g.add_vertices(rng.randint(1, 8))
        for i in range(1, len(members)):
            g.add_edge(members[i], rng.choice(members[:i]))
        core += members
    noise_ids = g.add_vertices(noise)
    for i, v in enumerate(noise_ids):
        targets = core + noise_ids[:i]
        if not targets:
            continue
        for u in rng.sample(targets, min(len(targets), rng.randint(1, 4))):
            if g.multiplicity(v, u) == 0:
                g.add_edge(v, u)
    return Instance(g, k)
