"""Maximum-cardinality matching in general graphs.

max_matching is the classic O(V^3) blossom-shrinking search (BFS forest,
base[] contraction, path flipping), written directly against this
package's Graph type with ascending-id scan order so results are
reproducible.  brute_force_matching and tutte_deficiency_witness are the
independent small-instance oracles used to validate it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import TooLarge
from .graph import Graph

BRUTE_LIMIT = 14


@dataclass
class Matching:
    edges: list[int]
    covered: set[int]

    def size(self) -> int:
        return len(self.edges)


def _validate(g: Graph, edge_ids) -> Matching:
    covered: set[int] = set()
    for eid in edge_ids:
        e = g.edges[eid]
        if e.u in covered or e.v in covered or e.is_loop:
            raise ValueError("not a matching")
        covered.add(e.u)
        covered.add(e.v)
    return Matching(sorted(edge_ids), covered)


def _simple_adjacency(g: Graph):
    """(index map, id list, neighbor lists); raises on parallel edges."""
    ids = g.nodes()
    idx = {v: i for i, v in enumerate(ids)}
    adj: list[list[int]] = [[] for _ in ids]
    seen_pairs: set[tuple[int, int]] = set()
    for eid in g.edge_ids():
        e = g.edges[eid]
        if e.is_loop:
            raise ValueError("max_matching requires a loop-free graph")
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in seen_pairs:
            raise ValueError("max_matching requires a simple graph; "
                             "deduplicate parallel edges first")
        seen_pairs.add(key)
        adj[idx[e.u]].append(idx[e.v])
        adj[idx[e.v]].append(idx[e.u])
    for lst in adj:
        lst.sort()
    return idx, ids, adj


def _find_augmenting(n, adj, match, root) -> bool:
    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    q = deque([root])

    def lca(a: int, b: int) -> int:
        mark = [False] * n
        while True:
            a = base[a]
            mark[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if mark[b]:
                return b
            b = p[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    while q:
        v = q.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and p[match[to]] != -1):
                # odd cycle: contract the blossom to its base
                curbase = lca(v, to)
                blossom = [False] * n
                mark_path(v, curbase, to, blossom)
                mark_path(to, curbase, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = curbase
                        if not used[i]:
                            used[i] = True
                            q.append(i)
            elif p[to] == -1:
                p[to] = v
                if match[to] == -1:
                    # augment: flip along parent pointers
                    while to != -1:
                        pv = p[to]
                        ppv = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = ppv
                    return True
                used[match[to]] = True
                q.append(match[to])
    return False


def max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching; deterministic for a given input."""
    idx, ids, adj = _simple_adjacency(g)
    n = len(ids)
    match = [-1] * n
    # greedy seed in ascending edge-id order
    for eid in g.edge_ids():
        e = g.edges[eid]
        iu, iv = idx[e.u], idx[e.v]
        if match[iu] == -1 and match[iv] == -1:
            match[iu] = iv
            match[iv] = iu
    for v in range(n):
        if match[v] == -1:
            _find_augmenting(n, adj, match, v)

    pair_to_eid: dict[tuple[int, int], int] = {}
    for eid in g.edge_ids():
        e = g.edges[eid]
        key = (min(e.u, e.v), max(e.u, e.v))
        if key not in pair_to_eid:
            pair_to_eid[key] = eid
    out = []
    for v in range(n):
        w = match[v]
        if w != -1 and v < w:
            a, b = ids[v], ids[w]
            out.append(pair_to_eid[(min(a, b), max(a, b))])
    return _validate(g, out)


def brute_force_matching(g: Graph) -> Matching:
    """Maximum matching by exhaustive edge-subset search with pruning."""
    if g.num_nodes() > BRUTE_LIMIT:
        raise TooLarge(f"brute-force matcher capped at {BRUTE_LIMIT} nodes")
    eids = [eid for eid in g.edge_ids() if not g.edges[eid].is_loop]
    best: list[int] = []

    def rec(i: int, chosen: list[int], covered: set[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if i == len(eids):
            return
        remaining_bound = (g.num_nodes() - len(covered)) // 2
        if len(chosen) + remaining_bound <= len(best):
            return
        e = g.edges[eids[i]]
        if e.u not in covered and e.v not in covered:
            covered.add(e.u)
            covered.add(e.v)
            chosen.append(eids[i])
            rec(i + 1, chosen, covered)
            chosen.pop()
            covered.discard(e.u)
            covered.discard(e.v)
        rec(i + 1, chosen, covered)

    rec(0, [], set())
    return _validate(g, best)


def _odd_components(g: Graph, removed: set[int]) -> int:
    rest = g.induced([v for v in g.nodes() if v not in removed])
    return sum(1 for comp in rest.components() if len(comp) % 2 == 1)


def tutte_deficiency_witness(g: Graph) -> tuple[set[int], int]:
    """(X, deficiency) with X maximizing oc(g - X) - |X|, exhaustively.

    By the Tutte-Berge formula the maximum equals the number of nodes a
    maximum matching leaves exposed.
    """
    if g.num_nodes() > BRUTE_LIMIT:
        raise TooLarge(f"Tutte witness search capped at {BRUTE_LIMIT} nodes")
    nodes = g.nodes()
    best_x: set[int] = set()
    best_val = _odd_components(g, set())
    for mask in range(1, 1 << len(nodes)):
        x = {nodes[i] for i in range(len(nodes)) if mask >> i & 1}
        val = _odd_components(g, x) - len(x)
        if val > best_val:
            best_val = val
            best_x = x
    return best_x, best_val
