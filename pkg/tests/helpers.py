"""Shared construction helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from ect.graph import Graph, ODD


def graph_from_edges(edge_list, costs=None, parities=None) -> Graph:
    g = Graph()
    nodes = sorted({u for u, v in edge_list} | {v for u, v in edge_list})
    for n in nodes:
        g.add_node(n, 1 if costs is None else costs.get(n, 1))
    for i, (u, v) in enumerate(edge_list):
        p = ODD if parities is None else parities[i]
        g.add_edge(u, v, p)
    return g


def cycle_graph(n, costs=None) -> Graph:
    return graph_from_edges([(i, (i + 1) % n) for i in range(n)], costs)


def path_graph(n) -> Graph:
    return graph_from_edges([(i, i + 1) for i in range(n - 1)])


def complete_graph(n) -> Graph:
    return graph_from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return graph_from_edges(outer + inner + spokes)


def random_graph(rng: random.Random, n: int, p: float, max_cost: int = 9) -> Graph:
    g = Graph()
    for v in range(n):
        g.add_node(v, Fraction(rng.randint(1, max_cost)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def random_multigraph(rng: random.Random, n: int, m: int,
                      twin_prob: float = 0.0) -> Graph:
    """Random multigraph with mixed parity tags (loops excluded)."""
    from ect.graph import EVEN, TWIN

    g = Graph()
    for v in range(n):
        g.add_node(v, Fraction(rng.randint(1, 9)))
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        r = rng.random()
        if r < twin_prob:
            par = TWIN
        elif r < twin_prob + 0.35:
            par = EVEN
        else:
            par = ODD
        g.add_edge(u, v, par)
    return g


def grid_graph(w: int, h: int):
    """w x h grid graph with integer coordinates; returns (graph, coords)."""
    g = Graph()
    coords = {}
    nid = lambda x, y: y * w + x
    for y in range(h):
        for x in range(w):
            g.add_node(nid(x, y), 1)
            coords[nid(x, y)] = (Fraction(x), Fraction(y))
    for y in range(h):
        for x in range(w):
            if x + 1 < w:
                g.add_edge(nid(x, y), nid(x + 1, y))
            if y + 1 < h:
                g.add_edge(nid(x, y), nid(x, y + 1))
    return g, coords
