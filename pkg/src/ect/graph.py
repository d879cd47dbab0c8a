"""Undirected multigraph with node costs and per-edge parity tags.

Parity tags drive all cycle-parity reasoning:

  ODD   -- the edge stands for a path of odd length (a plain edge),
  EVEN  -- a folded path of even length,
  TWIN  -- a merged pair of parallel routes whose lengths differ in parity;
           any cycle through a TWIN edge counts as even.

A cycle is even iff it contains a TWIN edge or the parity tags on it sum
to 0 mod 2.  Deciding which nodes lie on even cycles works block by block:

  * a block that is a (multigraph) cycle is all-or-nothing by its parity;
  * a cyclic block containing a TWIN edge qualifies entirely (in a
    2-connected graph every node shares a cycle with every edge);
  * a balanced block (a parity potential phi with p(uv) = phi(u)+phi(v)
    exists) qualifies node v iff two incident edges e1=vx, e2=vy agree on
    p(e)+phi(other end), because every x-y path in B-v has the rigid
    parity phi(x)+phi(y);
  * an unbalanced non-cycle block needs a per-node test: achievable
    parities of x-y paths in B-v factor over the block-cut tree of B-v,
    where a 2-connected unbalanced component offers both parities between
    any two of its nodes (route two disjoint paths to an odd cycle and
    pick the arc) while balanced components are rigid.

The naive rule "every node of a 2-connected non-cycle block containing an
even cycle qualifies" is wrong: attach v to a square by an edge and a
2-path and every cycle through v has length 5.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

ODD = 1
EVEN = 0
TWIN = 2

PARITY_NAMES = {ODD: "odd", EVEN: "even", TWIN: "twin"}


def combine_parity(a: int, b: int) -> int:
    """Parity of a path concatenation."""
    if a == TWIN or b == TWIN:
        return TWIN
    return (a + b) % 2


def cycle_is_even(parities) -> bool:
    total = 0
    for p in parities:
        if p == TWIN:
            return True
        total ^= p
    return total == 0


@dataclass
class Edge:
    eid: int
    u: int
    v: int
    parity: int = ODD

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, n: int) -> int:
        if n == self.u:
            return self.v
        if n == self.v:
            return self.u
        raise KeyError(f"node {n} not an endpoint of edge {self.eid}")


class Graph:
    """Multigraph with stable integer ids, exact rational node costs."""

    def __init__(self) -> None:
        self.cost: dict[int, Fraction] = {}
        self.edges: dict[int, Edge] = {}
        self._adj: dict[int, list[int]] = {}
        self._next_eid = 0

    # -- construction -----------------------------------------------------

    def add_node(self, nid: int, cost=0) -> int:
        if nid in self.cost:
            raise ValueError(f"node id {nid} reused")
        cost = Fraction(cost)
        if cost < 0:
            raise ValueError("costs must be nonnegative")
        self.cost[nid] = cost
        self._adj[nid] = []
        return nid

    def add_edge(self, u: int, v: int, parity: int = ODD, eid: int | None = None) -> int:
        if u not in self.cost or v not in self.cost:
            raise KeyError("edge endpoints must be existing nodes")
        if parity not in (ODD, EVEN, TWIN):
            raise ValueError(f"bad parity tag {parity!r}")
        if eid is None:
            eid = self._next_eid
        elif eid in self.edges:
            raise ValueError(f"edge id {eid} reused")
        self._next_eid = max(self._next_eid, eid + 1)
        self.edges[eid] = Edge(eid, u, v, parity)
        self._adj[u].append(eid)
        if v != u:
            self._adj[v].append(eid)
        return eid

    # -- queries -----------------------------------------------------------

    def nodes(self) -> list[int]:
        return sorted(self.cost)

    def edge_ids(self) -> list[int]:
        return sorted(self.edges)

    def has_node(self, nid: int) -> bool:
        return nid in self.cost

    def incident(self, v: int) -> list[int]:
        """Edge ids at v, ascending; a loop appears once."""
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        d = 0
        for eid in self._adj[v]:
            d += 2 if self.edges[eid].is_loop else 1
        return d

    def neighbors(self, v: int) -> list[int]:
        seen = set()
        for eid in self._adj[v]:
            e = self.edges[eid]
            if not e.is_loop:
                seen.add(e.other(v))
        return sorted(seen)

    def num_nodes(self) -> int:
        return len(self.cost)

    def num_edges(self) -> int:
        return len(self.edges)

    def total_cost(self, nodes) -> Fraction:
        return sum((self.cost[v] for v in nodes), Fraction(0))

    # -- derived graphs ----------------------------------------------------

    def copy(self) -> "Graph":
        g = Graph()
        for v in self.nodes():
            g.add_node(v, self.cost[v])
        for eid in self.edge_ids():
            e = self.edges[eid]
            g.add_edge(e.u, e.v, e.parity, eid=eid)
        return g

    def induced(self, keep) -> "Graph":
        keep = set(keep)
        g = Graph()
        for v in self.nodes():
            if v in keep:
                g.add_node(v, self.cost[v])
        for eid in self.edge_ids():
            e = self.edges[eid]
            if e.u in keep and e.v in keep:
                g.add_edge(e.u, e.v, e.parity, eid=eid)
        return g

    def remove_edge(self, eid: int) -> None:
        e = self.edges.pop(eid)
        self._adj[e.u].remove(eid)
        if e.v != e.u:
            self._adj[e.v].remove(eid)

    def remove_node(self, v: int) -> None:
        for eid in list(self._adj[v]):
            self.remove_edge(eid)
        del self._adj[v]
        del self.cost[v]

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for root in self.nodes():
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                u = stack.pop()
                for w in self.neighbors(u):
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


# -- block decomposition ----------------------------------------------------


@dataclass
class Block:
    nodes: list[int]
    edges: list[int]

    @property
    def is_loop(self) -> bool:
        return len(self.nodes) == 1 and len(self.edges) == 1

    @property
    def is_bridge(self) -> bool:
        return len(self.edges) == 1 and len(self.nodes) == 2


@dataclass
class BlockDecomposition:
    blocks: list[Block]
    cut_nodes: set[int]
    blocks_of_node: dict[int, list[int]] = field(default_factory=dict)

    def block_graph(self) -> dict:
        """Bipartite adjacency: cut node -> block indices and back."""
        cut_to_blocks = {c: [] for c in sorted(self.cut_nodes)}
        block_to_cuts: dict[int, list[int]] = {}
        for i, b in enumerate(self.blocks):
            cuts = sorted(set(b.nodes) & self.cut_nodes)
            block_to_cuts[i] = cuts
            for c in cuts:
                cut_to_blocks[c].append(i)
        return {"cut_to_blocks": cut_to_blocks, "block_to_cuts": block_to_cuts}


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components of a multigraph; loops are singleton blocks."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    out_blocks: list[Block] = []
    cut_nodes: set[int] = set()

    # Loops never participate in DFS; each is its own block.
    for eid in g.edge_ids():
        e = g.edges[eid]
        if e.is_loop:
            out_blocks.append(Block([e.u], [eid]))

    for root in g.nodes():
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[int] = []
        # stack frames: (node, parent edge id, iterator over incident eids)
        stack = [(root, -1, iter(g.incident(root)))]
        while stack:
            u, pe, it = stack[-1]
            advanced = False
            for eid in it:
                e = g.edges[eid]
                if e.is_loop or eid == pe:
                    continue
                w = e.other(u)
                if w not in disc:
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    edge_stack.append(eid)
                    stack.append((w, eid, iter(g.incident(w))))
                    advanced = True
                    break
                elif disc[w] < disc[u]:
                    edge_stack.append(eid)
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[u])
                if low[u] >= disc[parent]:
                    # pop the block rooted at the tree edge parent-u
                    blk_edges = []
                    while True:
                        eid = edge_stack.pop()
                        blk_edges.append(eid)
                        if eid == pe:
                            break
                    blk_nodes = set()
                    for beid in blk_edges:
                        be = g.edges[beid]
                        blk_nodes.add(be.u)
                        blk_nodes.add(be.v)
                    out_blocks.append(Block(sorted(blk_nodes), sorted(blk_edges)))
                    if parent != root or root_children > 1:
                        cut_nodes.add(parent)
        # root cut-node status handled inside (root_children > 1)

    dec = BlockDecomposition(out_blocks, cut_nodes)
    bon: dict[int, list[int]] = {v: [] for v in g.nodes()}
    for i, b in enumerate(dec.blocks):
        for v in b.nodes:
            bon[v].append(i)
    dec.blocks_of_node = bon
    return dec


def _block_degrees(g: Graph, blk: Block) -> dict[int, int]:
    deg = {v: 0 for v in blk.nodes}
    for eid in blk.edges:
        e = g.edges[eid]
        if e.is_loop:
            deg[e.u] += 2
        else:
            deg[e.u] += 1
            deg[e.v] += 1
    return deg


def _block_is_cycle(g: Graph, blk: Block) -> bool:
    if blk.is_loop:
        return True
    if len(blk.edges) < 2:
        return False
    return all(d == 2 for d in _block_degrees(g, blk).values())


def _cycle_block_even(g: Graph, blk: Block) -> bool:
    return cycle_is_even(g.edges[eid].parity for eid in blk.edges)


def parity_potential(g: Graph, blk_nodes, blk_edges):
    """(balanced, phi) for the subgraph; TWIN edges make it unbalanced."""
    nodes = list(blk_nodes)
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for eid in blk_edges:
        e = g.edges[eid]
        if e.parity == TWIN:
            return False, None
        if e.is_loop:
            if e.parity == ODD:
                return False, None
            continue
        adj[e.u].append(eid)
        adj[e.v].append(eid)
    phi: dict[int, int] = {}
    for start in sorted(nodes):
        if start in phi:
            continue
        phi[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for eid in sorted(adj[u]):
                e = g.edges[eid]
                w = e.other(u)
                want = (phi[u] + e.parity) % 2
                if w not in phi:
                    phi[w] = want
                    queue.append(w)
                elif phi[w] != want:
                    return False, None
    return True, phi


def has_even_cycle(g: Graph) -> bool:
    """True iff g contains an even cycle (TWIN edges count as even)."""
    for blk in blocks(g).blocks:
        if blk.is_loop:
            if g.edges[blk.edges[0]].parity in (EVEN, TWIN):
                return True
            continue
        if blk.is_bridge:
            continue
        if _block_is_cycle(g, blk):
            if _cycle_block_even(g, blk):
                return True
            continue
        # 2-connected, not a cycle: a theta subgraph exists and one of its
        # three cycles is always even (three odd cycle parities cannot sum
        # to 0 mod 2); TWIN edges only help.
        return True
    return False


def _walk_cycle_block(g: Graph, blk: Block) -> tuple[list[int], list[int]]:
    """Order a cycle block's nodes/edges along the cycle."""
    if blk.is_loop:
        return [blk.nodes[0]], [blk.edges[0]]
    start = blk.nodes[0]
    inc: dict[int, list[int]] = {v: [] for v in blk.nodes}
    for eid in blk.edges:
        e = g.edges[eid]
        inc[e.u].append(eid)
        inc[e.v].append(eid)
    nodes = [start]
    edges = []
    cur = start
    prev_eid = -1
    while True:
        eid = min(x for x in inc[cur] if x != prev_eid) if len(inc[cur]) == 2 else inc[cur][0]
        e = g.edges[eid]
        nxt = e.other(cur)
        edges.append(eid)
        if nxt == start and len(edges) == len(blk.edges):
            break
        nodes.append(nxt)
        cur, prev_eid = nxt, eid
    return nodes, edges


def _find_block_cycle(g: Graph, blk: Block) -> tuple[list[int], list[int]]:
    """Some cycle inside a cyclic block (DFS back-edge), deterministic."""
    parent_edge: dict[int, int] = {}
    parent: dict[int, int] = {}
    order: dict[int, int] = {}
    inc: dict[int, list[int]] = {v: [] for v in blk.nodes}
    for eid in sorted(blk.edges):
        e = g.edges[eid]
        if not e.is_loop:
            inc[e.u].append(eid)
            inc[e.v].append(eid)
    root = blk.nodes[0]
    order[root] = 0
    stack = [(root, -1)]
    cnt = 1
    tree_edges: set[int] = set()
    best = None  # (eid, u, w): non-tree edge
    while stack and best is None:
        u, pe = stack.pop()
        for eid in sorted(inc[u]):
            if eid == pe or eid in tree_edges:
                continue
            e = g.edges[eid]
            w = e.other(u)
            if w not in order:
                order[w] = cnt
                cnt += 1
                parent[w] = u
                parent_edge[w] = eid
                tree_edges.add(eid)
                stack.append((w, eid))
            else:
                best = (eid, u, w)
                break
    assert best is not None, "cyclic block without a cycle"
    eid, u, w = best
    # tree path u -> w plus the non-tree edge closes a cycle
    anc_u = [u]
    while anc_u[-1] in parent:
        anc_u.append(parent[anc_u[-1]])
    anc_set = set(anc_u)
    lca = w
    while lca not in anc_set:
        lca = parent[lca]
    up_nodes, up_edges = [], []
    cur = u
    while cur != lca:
        up_nodes.append(cur)
        up_edges.append(parent_edge[cur])
        cur = parent[cur]
    down_nodes, down_edges = [], []
    cur = w
    while cur != lca:
        down_nodes.append(cur)
        down_edges.append(parent_edge[cur])
        cur = parent[cur]
    nodes = up_nodes + [lca] + down_nodes[::-1]
    edges = up_edges + down_edges[::-1] + [eid]
    return nodes, edges


def _cycle_parity(g: Graph, edge_ids) -> int:
    total = 0
    for eid in edge_ids:
        p = g.edges[eid].parity
        if p == TWIN:
            return TWIN
        total ^= p
    return total


def find_even_cycle(g: Graph):
    """Some even cycle as (node list, edge id list), or None.

    Node list is ordered along the cycle; for a loop it is the single node.
    """
    for blk in blocks(g).blocks:
        if blk.is_loop:
            if g.edges[blk.edges[0]].parity in (EVEN, TWIN):
                return [blk.nodes[0]], [blk.edges[0]]
            continue
        if blk.is_bridge:
            continue
        if _block_is_cycle(g, blk):
            if _cycle_block_even(g, blk):
                return _walk_cycle_block(g, blk)
            continue
        return _even_cycle_in_noncycle_block(g, blk)
    return None


def _bfs_path(g: Graph, allowed_edges: set[int], src: int, targets: set[int],
              forbidden_nodes: set[int]):
    """Shortest path from src to any target avoiding forbidden nodes.

    Returns (node path, edge path) ending at the first target reached.
    """
    prev: dict[int, tuple[int, int]] = {}
    seen = {src}
    queue = [src]
    hit = None
    while queue and hit is None:
        nxt_queue = []
        for u in queue:
            for eid in g.incident(u):
                if eid not in allowed_edges:
                    continue
                e = g.edges[eid]
                if e.is_loop:
                    continue
                w = e.other(u)
                if w in seen or w in forbidden_nodes:
                    continue
                seen.add(w)
                prev[w] = (u, eid)
                if w in targets:
                    hit = w
                    break
                nxt_queue.append(w)
            if hit is not None:
                break
        queue = nxt_queue
    if hit is None:
        return None
    nodes = [hit]
    edges = []
    cur = hit
    while cur != src:
        u, eid = prev[cur]
        edges.append(eid)
        nodes.append(u)
        cur = u
    nodes.reverse()
    edges.reverse()
    return nodes, edges


def _even_cycle_in_noncycle_block(g: Graph, blk: Block):
    """Even cycle inside a 2-connected non-cycle block (always exists)."""
    blk_edges = set(blk.edges)
    # TWIN edge: any cycle through it is even.
    for eid in sorted(blk.edges):
        e = g.edges[eid]
        if e.parity == TWIN and not e.is_loop:
            rest = blk_edges - {eid}
            res = _bfs_path(g, rest, e.u, {e.v}, set())
            assert res is not None, "twin edge not on a cycle in 2-connected block"
            nodes, edges = res
            return nodes, edges + [eid]
    nodes, edges = _find_block_cycle(g, blk)
    if _cycle_parity(g, edges) == 0:
        return nodes, edges
    cyc_nodes = set(nodes)
    cyc_edges = set(edges)
    pos = {v: i for i, v in enumerate(nodes)}

    def arcs(a: int, c: int):
        ia, ic = pos[a], pos[c]
        if ia > ic:
            ia, ic = ic, ia
        arc1_nodes = nodes[ia:ic + 1]
        arc1_edges = edges[ia:ic]
        arc2_nodes = nodes[ic:] + nodes[:ia + 1]
        arc2_edges = edges[ic:] + edges[:ia]
        return (arc1_nodes, arc1_edges), (arc2_nodes, arc2_edges)

    # chord?
    for eid in sorted(blk.edges):
        if eid in cyc_edges:
            continue
        e = g.edges[eid]
        if e.is_loop:
            continue
        if e.u in cyc_nodes and e.v in cyc_nodes and e.u != e.v:
            (a1n, a1e), (a2n, a2e) = arcs(e.u, e.v)
            for an, ae in ((a1n, a1e), (a2n, a2e)):
                if cycle_is_even([g.edges[x].parity for x in ae] + [e.parity]):
                    return an, ae + [eid]
    # ear: edge (a, b) with a on C, b off C, then path b -> C - a avoiding a
    for eid in sorted(blk.edges):
        e = g.edges[eid]
        if e.is_loop:
            continue
        a, b = None, None
        if e.u in cyc_nodes and e.v not in cyc_nodes:
            a, b = e.u, e.v
        elif e.v in cyc_nodes and e.u not in cyc_nodes:
            a, b = e.v, e.u
        if a is None:
            continue
        res = _bfs_path(g, blk_edges - {eid}, b, cyc_nodes - {a}, {a})
        if res is None:
            continue
        pnodes, pedges = res
        c = pnodes[-1]
        ear_nodes = [a] + pnodes
        ear_edges = [eid] + pedges
        (a1n, a1e), (a2n, a2e) = arcs(a, c)
        for an, ae in ((a1n, a1e), (a2n, a2e)):
            cyc_edge_ids = ae + ear_edges
            if cycle_is_even(g.edges[x].parity for x in cyc_edge_ids):
                # node order: arc then ear interior
                full_nodes = list(an)
                if full_nodes[0] != a:
                    full_nodes.reverse()
                full_nodes = full_nodes + ear_nodes[1:-1][::-1]
                return full_nodes, cyc_edge_ids
    raise AssertionError("no even cycle found in 2-connected non-cycle block")


# -- nodes on even cycles ----------------------------------------------------


def _unbalanced_block_even_cycle_nodes(g: Graph, blk: Block) -> set[int]:
    """Per-node test inside an unbalanced, non-cycle, twin-free block."""
    result: set[int] = set()
    blk_edge_set = set(blk.edges)
    inc_in_block: dict[int, list[int]] = {v: [] for v in blk.nodes}
    for eid in sorted(blk.edges):
        e = g.edges[eid]
        inc_in_block[e.u].append(eid)
        if e.v != e.u:
            inc_in_block[e.v].append(eid)

    for v in blk.nodes:
        k = g.induced(blk.nodes)
        for eid in list(k.edges):
            if eid not in blk_edge_set:
                k.remove_edge(eid)
        k.remove_node(v)
        if _node_on_even_cycle_via_chain(g, k, v, inc_in_block[v]):
            result.add(v)
    return result


def _node_on_even_cycle_via_chain(g: Graph, k: Graph, v: int, v_edges: list[int]) -> bool:
    dec = blocks(k)
    # per block: flexible (unbalanced) or rigid with potential
    flex: list[bool] = []
    phis: list[dict[int, int] | None] = []
    for blk in dec.blocks:
        if blk.is_loop:
            flex.append(False)
            phis.append(None)
            continue
        balanced, phi = parity_potential(k, blk.nodes, blk.edges)
        flex.append(not balanced)
        phis.append(phi)

    # block-cut tree adjacency
    cut = dec.cut_nodes
    tree: dict[tuple, list[tuple]] = {}

    def add(a, b):
        tree.setdefault(a, []).append(b)
        tree.setdefault(b, []).append(a)

    for i, blk in enumerate(dec.blocks):
        tree.setdefault(("B", i), [])
        for u in blk.nodes:
            if u in cut:
                add(("B", i), ("C", u))

    def position(u: int):
        if u in cut:
            return ("C", u)
        cands = dec.blocks_of_node.get(u, [])
        # ignore loop blocks for positioning
        for i in cands:
            if not dec.blocks[i].is_loop:
                return ("B", i)
        return None

    def path_parity(x: int, y: int):
        """(flexible, parity) of x-y paths in k; None if unreachable."""
        px, py = position(x), position(y)
        if px is None or py is None:
            return None
        # BFS over tree nodes computing reach at cut vertices, seeded from x
        reach: dict[tuple, tuple[bool, int]] = {}
        queue: list[tuple] = []
        if px[0] == "C":
            reach[px] = (False, 0)
            queue.append(px)
        else:
            bi = px[1]
            for u in dec.blocks[bi].nodes:
                if u in cut:
                    f = flex[bi]
                    p = 0 if f else (phis[bi][x] + phis[bi][u]) % 2
                    node = ("C", u)
                    if node not in reach:
                        reach[node] = (f, p)
                        queue.append(node)
            if py == px:
                if flex[px[1]]:
                    return (True, 0)
                return (False, (phis[px[1]][x] + phis[px[1]][y]) % 2)
        head = 0
        while head < len(queue):
            node = queue[head]
            head += 1
            f0, p0 = reach[node]
            if node[0] == "C":
                c = node[1]
                for bnode in tree.get(node, []):
                    bi = bnode[1]
                    fb = f0 or flex[bi]
                    for u in dec.blocks[bi].nodes:
                        if u in cut and u != c:
                            cn = ("C", u)
                            if cn not in reach:
                                pb = p0 if fb else (p0 + phis[bi][c] + phis[bi][u]) % 2
                                reach[cn] = (fb, pb)
                                queue.append(cn)
        if py[0] == "C":
            return reach.get(py)
        # y strictly inside block py[1]: enter via any reachable cut of it
        bi = py[1]
        if px[0] == "B" and px[1] == bi:
            if flex[bi]:
                return (True, 0)
            return (False, (phis[bi][x] + phis[bi][y]) % 2)
        for u in sorted(set(dec.blocks[bi].nodes) & cut):
            cn = ("C", u)
            if cn in reach:
                f0, p0 = reach[cn]
                fb = f0 or flex[bi]
                pb = p0 if fb else (p0 + phis[bi][u] + phis[bi][y]) % 2
                return (fb, pb)
        return None

    edges_sorted = sorted(v_edges)
    for i, e1 in enumerate(edges_sorted):
        ed1 = g.edges[e1]
        if ed1.is_loop:
            continue
        x = ed1.other(v)
        for e2 in edges_sorted[i + 1:]:
            ed2 = g.edges[e2]
            if ed2.is_loop:
                continue
            y = ed2.other(v)
            # no TWIN tags reach here (twin blocks short-circuit earlier)
            target = (ed1.parity + ed2.parity) % 2
            if x == y:
                if target == 0:
                    return True
                continue
            res = path_parity(x, y)
            if res is None:
                continue
            f, p = res
            if f or p == target:
                return True
    return False


def even_cycle_vertices(g: Graph) -> set[int]:
    """Exactly the nodes lying on at least one even cycle."""
    result: set[int] = set()
    dec = blocks(g)
    for blk in dec.blocks:
        if blk.is_loop:
            if g.edges[blk.edges[0]].parity in (EVEN, TWIN):
                result.add(blk.nodes[0])
            continue
        if blk.is_bridge:
            continue
        if any(g.edges[eid].parity == TWIN for eid in blk.edges):
            # cyclic block: every node shares a cycle with the twin edge
            result.update(blk.nodes)
            continue
        if _block_is_cycle(g, blk):
            if _cycle_block_even(g, blk):
                result.update(blk.nodes)
            continue
        balanced, phi = parity_potential(g, blk.nodes, blk.edges)
        if balanced:
            inc: dict[int, list[int]] = {v: [] for v in blk.nodes}
            for eid in sorted(blk.edges):
                e = g.edges[eid]
                inc[e.u].append(eid)
                if e.v != e.u:
                    inc[e.v].append(eid)
            for v in blk.nodes:
                seen_bits = set()
                for eid in inc[v]:
                    e = g.edges[eid]
                    bit = (e.parity + phi[e.other(v)]) % 2
                    if bit in seen_bits:
                        result.add(v)
                        break
                    seen_bits.add(bit)
        else:
            result.update(_unbalanced_block_even_cycle_nodes(g, blk))
    return result


def residual_graph(g: Graph, s) -> Graph:
    """G^S: delete s, then every node not on an even cycle."""
    s = set(s)
    h = g.induced([v for v in g.nodes() if v not in s])
    keep = even_cycle_vertices(h)
    return h.induced(sorted(keep))


def is_feasible_ect(g: Graph, s) -> bool:
    """True iff g - s has no even cycle."""
    s = set(s)
    return not has_even_cycle(g.induced([v for v in g.nodes() if v not in s]))
