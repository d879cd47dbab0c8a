"""Exact solvers and enumeration oracles for small instances.

exact_ect is a branch-and-bound over nodes of a currently-unhit even
cycle; enumerate_even_cycles and brute_force_ect are the independent
slow references the rest of the test suite is measured against.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import TooLarge
from .graph import Graph, cycle_is_even, find_even_cycle, has_even_cycle

DEFAULT_ORACLE_LIMIT = 22
ENUM_LIMIT = 12


def oracle_node_limit() -> int:
    env = os.environ.get("ECT_MAX_ORACLE_NODES")
    if env:
        return int(env)
    return DEFAULT_ORACLE_LIMIT


def enumerate_simple_cycles(g: Graph) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """All simple cycles as (node tuple, edge id frozenset).

    Loops and parallel-edge 2-cycles are included.  Deduplicated by edge
    set; node tuples start at the smallest node, deterministic order.
    """
    if g.num_nodes() > ENUM_LIMIT:
        raise TooLarge(f"cycle enumeration capped at {ENUM_LIMIT} nodes")
    cycles: dict[frozenset[int], tuple[int, ...]] = {}
    for eid in g.edge_ids():
        e = g.edges[eid]
        if e.is_loop:
            cycles[frozenset([eid])] = (e.u,)

    nodes = g.nodes()
    for start in nodes:
        # paths visiting only nodes >= start, starting/ending at start
        stack = [(start, [start], [], {start})]
        while stack:
            cur, path_nodes, path_edges, onpath = stack.pop()
            for eid in g.incident(cur):
                e = g.edges[eid]
                if e.is_loop or (path_edges and eid == path_edges[-1]):
                    continue
                if eid in path_edges:
                    continue
                w = e.other(cur)
                if w == start and len(path_edges) >= 1:
                    key = frozenset(path_edges + [eid])
                    if len(key) >= 2 and key not in cycles:
                        cycles[key] = tuple(path_nodes)
                    continue
                if w < start or w in onpath:
                    continue
                stack.append((w, path_nodes + [w], path_edges + [eid],
                              onpath | {w}))
    return [(cycles[k], k) for k in sorted(cycles, key=lambda s: sorted(s))]


def enumerate_even_cycles(g: Graph) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """All simple even cycles (twin edges make a cycle even)."""
    out = []
    for nodes, eids in enumerate_simple_cycles(g):
        if cycle_is_even(g.edges[eid].parity for eid in eids):
            out.append((nodes, eids))
    return out


def brute_force_ect(g: Graph) -> tuple[frozenset[int], Fraction]:
    """Minimum-cost even cycle transversal by include/exclude subset DFS.

    Exhaustive-equivalent (cost-pruned) and deliberately structured
    differently from exact_ect, so the two can cross-check each other.
    """
    if g.num_nodes() > 14:
        raise TooLarge("brute force capped at 14 nodes")
    nodes = g.nodes()
    best_cost = g.total_cost(nodes) + 1
    best_set: frozenset[int] = frozenset(nodes)

    def feasible(chosen: set[int]) -> bool:
        return not has_even_cycle(g.induced([v for v in nodes if v not in chosen]))

    def rec(idx: int, chosen: set[int], cost: Fraction) -> None:
        nonlocal best_cost, best_set
        if cost >= best_cost:
            return
        if idx == len(nodes):
            if feasible(chosen):
                best_cost = cost
                best_set = frozenset(chosen)
            return
        v = nodes[idx]
        rec(idx + 1, chosen, cost)
        chosen.add(v)
        rec(idx + 1, chosen, cost + g.cost[v])
        chosen.remove(v)

    rec(0, set(), Fraction(0))
    return best_set, best_cost


def exact_ect(g: Graph) -> tuple[frozenset[int], Fraction]:
    """Optimal ECT by branch-and-bound on nodes of an unhit even cycle."""
    limit = oracle_node_limit()
    if g.num_nodes() > limit:
        raise TooLarge(f"exact oracle capped at {limit} nodes "
                       "(override with ECT_MAX_ORACLE_NODES)")

    incumbent_cost = g.total_cost(g.nodes()) + 1
    incumbent: frozenset[int] = frozenset(g.nodes())

    # greedy warm start: repeatedly delete the cheapest node of some even cycle
    greedy: set[int] = set()
    h = g.copy()
    while True:
        cyc = find_even_cycle(h)
        if cyc is None:
            break
        pick = min(cyc[0], key=lambda v: (g.cost[v], v))
        greedy.add(pick)
        h.remove_node(pick)
    if g.total_cost(greedy) < incumbent_cost:
        incumbent_cost = g.total_cost(greedy)
        incumbent = frozenset(greedy)

    def bb(chosen: set[int], cost: Fraction, banned: frozenset[int]) -> None:
        nonlocal incumbent_cost, incumbent
        if cost >= incumbent_cost:
            return
        rest = g.induced([v for v in g.nodes() if v not in chosen])
        cyc = find_even_cycle(rest)
        if cyc is None:
            incumbent_cost = cost
            incumbent = frozenset(chosen)
            return
        cyc_nodes = [v for v in cyc[0] if v not in banned]
        if not cyc_nodes:
            return  # every node of this cycle is banned: dead branch
        newly_banned = set()
        for v in sorted(cyc_nodes, key=lambda v: (g.cost[v], v)):
            chosen.add(v)
            bb(chosen, cost + g.cost[v], banned | frozenset(newly_banned))
            chosen.remove(v)
            newly_banned.add(v)

    bb(set(), Fraction(0), frozenset())
    return incumbent, incumbent_cost
