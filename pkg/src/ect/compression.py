"""Graph compressions: folding, twin edges, pieces, subdivision.

Stage 1 (1-compression) repeatedly folds degree-2 nodes, replacing the
two incident edges by one edge whose parity is the sum.  Stage 2 merges
parallel pairs of *plain* edges with differing parities into TWIN edges
and refolds to a fixpoint.  Pairs involving a twin edge are left alone:
collapsing them would bury an even cycle inside a single edge and break
the piece structure (a piece's blocks must be cycles and paths).  A
same-parity plain pair is a cheap even cycle the caller should have
consumed first and raises SameParityParallel.

Folding never creates loops: a degree-2 node whose edges both lead to
the same neighbour is left in place, so a component that compresses down
to a bare cycle halts as a two-node multigraph cycle (a "2-gon") whose
two edges are still honest pieces.

Every produced edge records its origin (base edge / fold / twin merge),
from which the piece of a G2 edge is flattened: an alternating chain of
path segments and elementary cycles with branch nodes and handles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateGraph, NotACycle, SameParityParallel
from .graph import (EVEN, ODD, TWIN, Graph, blocks, combine_parity,
                    cycle_is_even)
from .embedding import Embedding


# -- piece structure ---------------------------------------------------------


@dataclass
class Handle:
    interior: list[int]   # interior nodes, ordered from the enter branch node
    edges: list[int]      # source edge ids
    parity: int


@dataclass
class PathSeg:
    nodes: list[int]      # including both endpoints
    edges: list[int]
    parity: int


@dataclass
class CycleSeg:
    enter: int            # branch node u_C
    exit: int             # branch node v_C
    handles: tuple[Handle, Handle]   # handles[0] is the embedding representative

    def cycle_key(self) -> frozenset[int]:
        return frozenset([self.enter, self.exit]
                         + self.handles[0].interior + self.handles[1].interior)

    def handle_key(self, i: int) -> frozenset[int]:
        return frozenset(self.handles[i].interior)


@dataclass
class Piece:
    g2_edge: int
    u: int
    v: int
    segments: list        # PathSeg | CycleSeg, ordered from u to v
    twin: bool
    parity: int           # TWIN for twin pieces

    def elementary_cycles(self) -> list[CycleSeg]:
        return [s for s in self.segments if isinstance(s, CycleSeg)]

    def all_nodes(self) -> set[int]:
        out = {self.u, self.v}
        for s in self.segments:
            if isinstance(s, PathSeg):
                out.update(s.nodes)
            else:
                out.update((s.enter, s.exit))
                out.update(s.handles[0].interior)
                out.update(s.handles[1].interior)
        return out

    def interior_nodes(self) -> set[int]:
        return self.all_nodes() - {self.u, self.v}

    def cut_interior_nodes(self) -> set[int]:
        """Interior nodes whose removal disconnects u from v: path-segment
        interiors and branch nodes (handle interiors are not cut nodes)."""
        out: set[int] = set()
        for s in self.segments:
            if isinstance(s, PathSeg):
                out.update(s.nodes[1:-1])
            else:
                out.update((s.enter, s.exit))
        return out - {self.u, self.v}

    def source_edges(self) -> list[int]:
        out: list[int] = []
        for s in self.segments:
            if isinstance(s, PathSeg):
                out.extend(s.edges)
            else:
                out.extend(s.handles[0].edges)
                out.extend(s.handles[1].edges)
        return out

    def rep_route(self) -> list[int]:
        """u-v node route following representative handles (for drawing)."""
        route = [self.u]
        for s in self.segments:
            if isinstance(s, PathSeg):
                route.extend(s.nodes[1:])
            else:
                route.extend(s.handles[0].interior)
                route.append(s.exit)
        return route


@dataclass
class FoldedPath:
    nodes: list[int]      # including both endpoints
    edges: list[int]
    parity: int


# -- builder -----------------------------------------------------------------


class _Builder:
    def __init__(self, g: Graph, embedding: Embedding | None):
        self.g = g.copy()
        self.origin: dict[int, tuple] = {}
        self._source_parity = {eid: g.edges[eid].parity for eid in g.edge_ids()}
        for eid in self.g.edge_ids():
            e = self.g.edges[eid]
            self.origin[eid] = ("base", eid, e.u, e.v)
        self.rot = None
        self.coords = None
        if embedding is not None:
            self.rot = {v: list(embedding.rot[v]) for v in self.g.nodes()}
            self.coords = embedding.coords

    # rotation helpers

    def _dart(self, eid: int, node: int):
        e = self.g.edges[eid]
        return (eid, 0) if e.u == node else (eid, 1)

    def _replace_dart(self, node: int, old, new) -> None:
        if self.rot is None:
            return
        i = self.rot[node].index(old)
        self.rot[node][i] = new

    def _remove_dart(self, node: int, d) -> None:
        if self.rot is None:
            return
        self.rot[node].remove(d)

    # operations

    def fold(self, v: int) -> bool:
        inc = self.g.incident(v)
        if len(inc) != 2:
            return False
        e1, e2 = self.g.edges[inc[0]], self.g.edges[inc[1]]
        if e1.is_loop or e2.is_loop:
            return False
        u, w = e1.other(v), e2.other(v)
        if u == w:
            return False  # would create a loop; 2-gon endgame
        parity = combine_parity(e1.parity, e2.parity)
        d1u = self._dart(e1.eid, u)
        d2w = self._dart(e2.eid, w)
        self.g.remove_edge(e1.eid)
        self.g.remove_edge(e2.eid)
        self.g.remove_node(v)
        f = self.g.add_edge(u, w, parity)
        self.origin[f] = ("fold", e1.eid, v, e2.eid, u, w)
        if self.rot is not None:
            self._replace_dart(u, d1u, self._dart(f, u))
            self._replace_dart(w, d2w, self._dart(f, w))
            del self.rot[v]
        return True

    def fold_pass(self) -> bool:
        any_fold = False
        progress = True
        while progress:
            progress = False
            for v in self.g.nodes():
                if (self.g.has_node(v) and self.g.degree(v) == 2
                        and self.fold(v)):
                    progress = True
                    any_fold = True
        return any_fold

    def merge_pass(self) -> bool:
        merged_any = False
        classes: dict[tuple[int, int], list[int]] = {}
        for eid in self.g.edge_ids():
            e = self.g.edges[eid]
            if e.is_loop:
                continue
            classes.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(eid)
        for key in sorted(classes):
            plains = [eid for eid in sorted(classes[key])
                      if self.g.edges[eid].parity != TWIN]
            while len(plains) >= 2:
                lead = plains[0]
                partner = None
                for other in plains[1:]:
                    if self.g.edges[other].parity != self.g.edges[lead].parity:
                        partner = other
                        break
                if partner is None:
                    raise SameParityParallel(
                        f"parallel edges of equal parity between {key}: "
                        "a cheap even cycle was not consumed before compression")
                self._merge(lead, partner)
                plains.remove(lead)
                plains.remove(partner)
                merged_any = True
        return merged_any

    def _merge(self, keep: int, drop: int) -> None:
        ek = self.g.edges[keep]
        ed = self.g.edges[drop]
        u, v = ek.u, ek.v
        dku, dkv = self._dart(keep, u), self._dart(keep, v)
        ddu, ddv = self._dart(drop, u), self._dart(drop, v)
        self.g.remove_edge(keep)
        self.g.remove_edge(drop)
        f = self.g.add_edge(u, v, TWIN)
        self.origin[f] = ("twin", keep, drop, u, v)
        if self.rot is not None:
            self._replace_dart(u, dku, (f, 0))
            self._replace_dart(v, dkv, (f, 1))
            self._remove_dart(u, ddu)
            self._remove_dart(v, ddv)

    # flattening

    def flatten(self, eid: int, start: int):
        """(nodes, atoms): nodes[i-1], nodes[i] joined by atoms[i-1]; an atom
        is ("edge", source eid, parity) or ("cycle", CycleSeg)."""
        nodes = [start]
        atoms: list[tuple] = []
        stack = [(eid, start)]
        while stack:
            cur, s = stack.pop()
            entry = self.origin[cur]
            kind = entry[0]
            if kind == "base":
                _, oid, u, v = entry
                end = v if s == u else u
                atoms.append(("edge", oid, self._base_parity(oid)))
                nodes.append(end)
            elif kind == "fold":
                _, le, mid, re, u, v = entry
                first, second = (le, re) if s == u else (re, le)
                stack.append((second, mid))
                stack.append((first, s))
            else:  # twin
                _, kept, dropped, u, v = entry
                end = v if s == u else u
                hk = self._handle(kept, s, end)
                hd = self._handle(dropped, s, end)
                atoms.append(("cycle", CycleSeg(s, end, (hk, hd))))
                nodes.append(end)
        return nodes, atoms

    def _base_parity(self, oid: int) -> int:
        # source edge parities are immutable; read from the stored base graph
        return self._source_parity[oid]

    def _handle(self, eid: int, start: int, end: int) -> Handle:
        nodes, atoms = self.flatten(eid, start)
        assert nodes[-1] == end
        edges = []
        parity = EVEN
        for a in atoms:
            assert a[0] == "edge", "nested twin inside a twin merge"
            edges.append(a[1])
            parity = combine_parity(parity, a[2])
        return Handle(nodes[1:-1], edges, parity)

    def folded_path(self, eid: int) -> FoldedPath:
        e = self.g.edges[eid]
        nodes, atoms = self.flatten(eid, e.u)
        edges = []
        parity = EVEN
        for a in atoms:
            assert a[0] == "edge", "twin inside stage-1 fold map"
            edges.append(a[1])
            parity = combine_parity(parity, a[2])
        return FoldedPath(nodes, edges, parity)

    def piece(self, eid: int) -> Piece:
        e = self.g.edges[eid]
        nodes, atoms = self.flatten(eid, e.u)
        segments: list = []
        run_nodes: list[int] = [nodes[0]]
        run_edges: list[int] = []
        run_parity = EVEN
        twin_piece = False
        parity = EVEN
        for i, a in enumerate(atoms):
            if a[0] == "edge":
                run_edges.append(a[1])
                run_nodes.append(nodes[i + 1])
                run_parity = combine_parity(run_parity, a[2])
            else:
                if run_edges:
                    segments.append(PathSeg(run_nodes, run_edges, run_parity))
                    parity = combine_parity(parity, run_parity)
                seg = a[1]
                segments.append(seg)
                twin_piece = True
                run_nodes = [nodes[i + 1]]
                run_edges = []
                run_parity = EVEN
        if run_edges:
            segments.append(PathSeg(run_nodes, run_edges, run_parity))
            parity = combine_parity(parity, run_parity)
        if twin_piece or parity == TWIN:
            parity = TWIN
            twin_piece = True
        assert parity == e.parity, "piece parity drifted from its edge tag"
        return Piece(eid, e.u, e.v, segments, twin_piece, parity)


# -- public API --------------------------------------------------------------


@dataclass
class OneCompression:
    graph: Graph
    fold_map: dict[int, FoldedPath]
    _builder: _Builder = field(repr=False, default=None)


@dataclass
class TwoCompression:
    graph: Graph
    pieces: dict[int, Piece]
    embedding: Embedding | None
    _builder: _Builder = field(repr=False, default=None)


@dataclass
class CompressionStack:
    source: Graph
    g1: Graph
    fold_map: dict[int, FoldedPath]
    g2: Graph
    pieces: dict[int, Piece]
    g2_embedding: Embedding | None
    g3: Graph
    midpoints: dict[int, int]

    def piece_of(self, g2_eid: int) -> Piece:
        return self.pieces[g2_eid]


def _check_not_degenerate(g: Graph) -> None:
    if g.num_nodes() == 0:
        raise DegenerateGraph("empty graph")
    for comp in g.components():
        if all(g.degree(v) == 2 for v in comp):
            raise DegenerateGraph(
                f"component {comp} is a bare cycle; the caller must consume "
                "it as a cheap even cycle before compressing")


def _new_builder(g: Graph, embedding: Embedding | None) -> _Builder:
    b = _Builder(g, embedding)
    b._source_parity = {eid: g.edges[eid].parity for eid in g.edge_ids()}
    return b


def one_compression(g: Graph, embedding: Embedding | None = None) -> OneCompression:
    """Fold all degree-2 nodes; each G1 edge maps to a source path."""
    _check_not_degenerate(g)
    b = _new_builder(g, embedding)
    b.fold_pass()
    fold_map = {eid: b.folded_path(eid) for eid in b.g.edge_ids()}
    return OneCompression(b.g.copy(), fold_map, b)


def two_compression(oc: OneCompression) -> TwoCompression:
    """Merge differing-parity plain parallel pairs to twins, refold to a
    fixpoint, and assemble the piece map."""
    b = oc._builder
    while True:
        merged = b.merge_pass()
        folded = b.fold_pass()
        if not merged and not folded:
            break
    pieces = {eid: b.piece(eid) for eid in b.g.edge_ids()}
    emb = None
    if b.rot is not None:
        poly = {eid: pieces[eid].rep_route() for eid in b.g.edge_ids()}
        emb = Embedding(b.g.copy(), {v: list(b.rot[v]) for v in b.g.nodes()},
                        b.coords, poly)
        g2 = emb.g
    else:
        g2 = b.g.copy()
    return TwoCompression(g2, pieces, emb, b)


def subdivide(g2: Graph) -> tuple[Graph, dict[int, int]]:
    """G3: every edge replaced by a length-two path; twin edges yield two
    twin-tagged edges."""
    g3 = Graph()
    for v in g2.nodes():
        g3.add_node(v, g2.cost.get(v, 0))
    next_id = (max(g2.nodes()) + 1) if g2.num_nodes() else 0
    midpoints: dict[int, int] = {}
    for eid in g2.edge_ids():
        e = g2.edges[eid]
        w = next_id
        next_id += 1
        g3.add_node(w, 0)
        midpoints[eid] = w
        if e.parity == TWIN:
            g3.add_edge(e.u, w, TWIN)
            g3.add_edge(w, e.v, TWIN)
        else:
            # split parity deterministically: first edge carries it
            g3.add_edge(e.u, w, e.parity)
            g3.add_edge(w, e.v, EVEN)
    return g3, midpoints


def compress(g: Graph, embedding: Embedding | None = None) -> CompressionStack:
    oc = one_compression(g, embedding)
    tc = two_compression(oc)
    g3, midpoints = subdivide(tc.graph)
    return CompressionStack(g, oc.graph, oc.fold_map, tc.graph, tc.pieces,
                            tc.embedding, g3, midpoints)


# -- cheap even cycles -------------------------------------------------------


def find_low_attachment_even_cycle(g: Graph):
    """An even cycle with at most two attachment nodes, under the detection
    rules: (a)/(b) even-cycle blocks with <= 2 attached nodes (including
    even loops), (c) same-parity parallel plain edges after folding.

    Returns (node list, source edge ids) or None.  The rules are sound but
    not complete (e.g. a Hamiltonian even cycle of a 3-connected component
    has zero outside neighbours yet no rule fires).
    """
    from .graph import _block_is_cycle, _cycle_block_even, _walk_cycle_block

    dec = blocks(g)
    for blk in dec.blocks:
        if blk.is_loop:
            e = g.edges[blk.edges[0]]
            if e.parity in (EVEN, TWIN):
                return [e.u], [blk.edges[0]]
            continue
        if blk.is_bridge:
            continue
        if _block_is_cycle(g, blk) and _cycle_block_even(g, blk):
            cyc = set(blk.nodes)
            attached = [v for v in blk.nodes
                        if any(w not in cyc for w in g.neighbors(v))]
            if len(attached) <= 2:
                return _walk_cycle_block(g, blk)
    # rule (c): fold a copy, look for same-parity plain parallel pairs
    if g.num_nodes() == 0:
        return None
    b = _new_builder(g, None)
    b.fold_pass()
    classes: dict[tuple[int, int], list[int]] = {}
    for eid in b.g.edge_ids():
        e = b.g.edges[eid]
        if e.is_loop:
            continue
        classes.setdefault((min(e.u, e.v), max(e.u, e.v)), []).append(eid)
    for key in sorted(classes):
        group = sorted(classes[key])
        for i, e1 in enumerate(group):
            p1 = b.g.edges[e1].parity
            if p1 == TWIN:
                continue
            for e2 in group[i + 1:]:
                if b.g.edges[e2].parity == p1:
                    r1 = b.folded_path(e1)
                    r2 = b.folded_path(e2)
                    nodes = r1.nodes + r2.nodes[-2:0:-1]
                    return nodes, r1.edges + r2.edges[::-1]
    return None


# -- preimages of G2 cycles --------------------------------------------------


@dataclass
class CyclePreimage:
    g2_nodes: list[int]          # cycle order in G2
    g2_edges: list[int]
    pieces: list[Piece]          # pieces[i] joins g2_nodes[i], g2_nodes[i+1]
    nodes: set[int]              # full support node set in the source graph

    def source_edges(self) -> list[int]:
        out = []
        for p in self.pieces:
            out.extend(p.source_edges())
        return sorted(out)


def order_cycle(g2: Graph, edge_ids) -> tuple[list[int], list[int]]:
    """Order edges of a (multigraph) cycle; raises NotACycle otherwise."""
    edge_ids = list(edge_ids)
    if not edge_ids:
        raise NotACycle("empty edge set")
    deg: dict[int, list[int]] = {}
    for eid in edge_ids:
        e = g2.edges[eid]
        if e.is_loop:
            if len(edge_ids) == 1:
                return [e.u], [eid]
            raise NotACycle("loop mixed with other edges")
        deg.setdefault(e.u, []).append(eid)
        deg.setdefault(e.v, []).append(eid)
    if any(len(v) != 2 for v in deg.values()):
        raise NotACycle("node of degree != 2 on claimed cycle")
    start = min(deg)
    nodes = [start]
    first = min(deg[start])
    edges = [first]
    cur = g2.edges[first].other(start)
    prev = first
    while cur != start:
        nodes.append(cur)
        nxt = deg[cur][0] if deg[cur][1] == prev else deg[cur][1]
        edges.append(nxt)
        prev = nxt
        cur = g2.edges[nxt].other(cur)
    if len(edges) != len(edge_ids):
        raise NotACycle("edge set is not a single cycle")
    return nodes, edges


def cycle_preimage(pieces: dict[int, Piece], g2: Graph, edge_ids) -> CyclePreimage:
    """Union of the pieces along a G2 cycle, with their decompositions."""
    nodes, edges = order_cycle(g2, edge_ids)
    plist = []
    support: set[int] = set()
    for eid in edges:
        p = pieces[eid]
        plist.append(p)
        support.update(p.all_nodes())
    return CyclePreimage(nodes, edges, plist, support)
