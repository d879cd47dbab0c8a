"""Pockets and quasi-perfect tilings.

A pseudo-pocket is a connected subgraph with a cycle and at most two
nodes having outside neighbours; a pocket also contains an even cycle.
Minimal pockets are found by enumerating separator-based candidates:
whole components, articulation-point splits and 2-cut splits (v forms a
2-cut with u iff v is an articulation point of g - u).  Single-component
candidates suffice: G2 has minimum degree 3 outside 2-gon components, so
a candidate that is a forest is impossible by edge counting, and any
cyclic pseudo-pocket of a 2-compression contains an even cycle (the
Lemma-5 property, asserted at runtime).

A tiling of a pocket H covers every even finite face with its own
boundary and pairs up odd faces whose symmetric difference is a single
even cycle; pairing is a maximum matching over the odd faces (including
the infinite one when odd, whose tile is dropped afterwards).  The
2/3-quasi-perfect certificate beta*(1-psi) + 2*psi >= 2/3 is asserted on
every construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import Embedding, FaceSet, faces
from .errors import (EctError, NoEvenCycle, QuasiPerfectViolation,
                     SharedBoundaryNotPath)
from .graph import Graph, blocks, cycle_is_even, has_even_cycle
from .matching import max_matching

TWO_THIRDS = Fraction(2, 3)


class Lemma5Violation(EctError):
    """A cyclic pseudo-pocket of a 2-compression without an even cycle."""


@dataclass
class Pocket:
    graph: Graph
    boundary: set[int]
    embedding: Embedding | None
    host: Graph

    def nodes(self) -> list[int]:
        return self.graph.nodes()


@dataclass
class Tile:
    faces: tuple[int, ...]           # one or two face ids
    cycle_nodes: list[int]
    cycle_edges: list[int]

    @property
    def is_pair(self) -> bool:
        return len(self.faces) == 2


@dataclass
class Tiling:
    tiles: list[Tile]
    beta: Fraction
    psi: Fraction
    faceset: FaceSet
    # pseudo-tiling bookkeeping (before the infinite-face tile is dropped)
    pseudo_covers_infinite: bool = False
    pseudo_beta_all: Fraction = Fraction(0)     # over all odd faces
    pseudo_psi_all: Fraction = Fraction(0)      # even fraction of all faces

    def certificate(self) -> Fraction:
        return self.beta * (1 - self.psi) + 2 * self.psi

    def covered_faces(self) -> set[int]:
        out: set[int] = set()
        for t in self.tiles:
            out.update(t.faces)
        return out


def _is_two_connected(g: Graph) -> bool:
    if g.num_nodes() <= 1:
        return False
    dec = blocks(g)
    real = [b for b in dec.blocks if not b.is_loop]
    return len(real) == 1 and not dec.cut_nodes and \
        len(real[0].nodes) == g.num_nodes()


def _contains_cycle(g: Graph) -> bool:
    # connected candidates: cycle iff edges >= nodes; loops always cycles
    for comp in g.components():
        cset = set(comp)
        m = sum(1 for e in g.edges.values() if e.u in cset)
        if m >= len(comp):
            return True
    return False


def _candidate(host: Graph, comp: list[int], seps: tuple[int, ...]) -> frozenset[int] | None:
    cset = set(comp)
    adjacent = []
    for s in seps:
        if any(w in cset for w in host.neighbors(s)):
            adjacent.append(s)
    cand = frozenset(cset | set(adjacent))
    sub = host.induced(cand)
    if not _contains_cycle(sub):
        return None
    if not has_even_cycle(sub):
        raise Lemma5Violation(
            f"pseudo-pocket {sorted(cand)} contains a cycle but no even "
            "cycle inside a 2-compression")
    return cand


def find_minimal_pocket(g2: Graph, embedding: Embedding | None = None) -> Pocket:
    """Inclusion-minimal pocket of g2 (smallest under containment, then
    node count, then node ids)."""
    if not has_even_cycle(g2):
        raise NoEvenCycle("graph has no even cycle, so no pocket exists")

    candidates: set[frozenset[int]] = set()
    for comp in g2.components():
        sub = g2.induced(comp)
        if has_even_cycle(sub):
            candidates.add(frozenset(comp))
        # whole components without even cycles are fine: every node of a
        # 2-compression lies on an even cycle only within its component

    # empty-interior pockets: a parallel class (or loop) that is itself an
    # even cycle, with the one or two class nodes as the whole boundary
    pair_classes: set[frozenset[int]] = set()
    for eid in g2.edge_ids():
        e = g2.edges[eid]
        if e.is_loop:
            pair_classes.add(frozenset([e.u]))
        else:
            pair_classes.add(frozenset([e.u, e.v]))
    for cls in sorted(pair_classes, key=sorted):
        sub = g2.induced(cls)
        if not _contains_cycle(sub):
            continue
        if not has_even_cycle(sub):
            raise Lemma5Violation(
                f"pseudo-pocket {sorted(cls)} contains a cycle but no even "
                "cycle inside a 2-compression")
        candidates.add(cls)

    cuts = sorted(blocks(g2).cut_nodes)
    for u in cuts:
        rest = g2.induced([v for v in g2.nodes() if v != u])
        for comp in rest.components():
            cand = _candidate(g2, comp, (u,))
            if cand is not None:
                candidates.add(cand)

    # 2-cuts: v pairs with u iff v is an articulation point of g2 - u
    seen_pairs: set[tuple[int, int]] = set()
    for u in g2.nodes():
        rest = g2.induced([v for v in g2.nodes() if v != u])
        for v in sorted(blocks(rest).cut_nodes):
            pair = (min(u, v), max(u, v))
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            rest2 = g2.induced([w for w in g2.nodes() if w not in pair])
            for comp in rest2.components():
                cand = _candidate(g2, comp, pair)
                if cand is not None:
                    candidates.add(cand)

    minimal = []
    for c in candidates:
        if not any(o < c for o in candidates):
            minimal.append(c)
    best = min(minimal, key=lambda c: (len(c), sorted(c)))

    sub = g2.induced(best)
    boundary = {v for v in best
                if any(w not in best for w in g2.neighbors(v))}
    assert len(boundary) <= 2, "pocket boundary exceeded two nodes"
    if not _is_two_connected(sub):
        raise EctError(
            f"minimal pocket {sorted(best)} is not 2-connected; the "
            "separator enumeration missed a smaller pocket")
    emb = embedding.restricted(best) if embedding is not None else None
    return Pocket(sub, boundary, emb, g2)


# -- tiles -------------------------------------------------------------------


def _face_boundary_edges(fs: FaceSet, fid: int) -> set[int]:
    return set(fs.face_edges(fid))


def _edge_sides(fs: FaceSet, eid: int) -> tuple[int, int]:
    return fs.face_of_dart[(eid, 0)], fs.face_of_dart[(eid, 1)]


def _cycle_from_edges(g: Graph, edge_ids: set[int]):
    """Order edge set into a single simple cycle, or None."""
    from .compression import order_cycle
    from .errors import NotACycle
    try:
        nodes, edges = order_cycle(g, sorted(edge_ids))
    except NotACycle:
        return None
    return nodes, edges


def _pair_tile_cycle(pocket: Pocket, fs: FaceSet, f: int, g_: int):
    """Symmetric-difference cycle of two faces sharing an edge, or raise."""
    ef = _face_boundary_edges(fs, f)
    eg = _face_boundary_edges(fs, g_)
    shared = ef & eg
    if not shared:
        return None
    diff = (ef | eg) - shared
    res = _cycle_from_edges(pocket.graph, diff)
    if res is None:
        raise SharedBoundaryNotPath(
            f"faces {f} and {g_} share edges but their symmetric difference "
            "is not a single cycle: a pseudo-pocket slipped through")
    nodes, edges = res
    if not cycle_is_even(pocket.graph.edges[e].parity for e in edges):
        raise SharedBoundaryNotPath(
            f"symmetric difference of odd faces {f}, {g_} is not even")
    return nodes, edges


def odd_face_tile_graph(pocket: Pocket, fs: FaceSet | None = None,
                        include_infinite: bool = False):
    """Graph over odd faces: {f,g} joined iff f∆g is a single even cycle.

    Returns (graph over face ids, {edge id: (cycle nodes, cycle edges)}).
    Nodes are odd finite faces, plus the infinite face when requested and
    odd.
    """
    if fs is None:
        fs = faces(pocket.embedding)
    face_ids = [fid for fid in fs.finite_faces() if fs.parity(fid) == 1]
    if include_infinite and fs.parity(fs.outer) == 1:
        face_ids.append(fs.outer)
    face_ids = sorted(face_ids)
    tg = Graph()
    for fid in face_ids:
        tg.add_node(fid, 0)
    cycles: dict[int, tuple[list[int], list[int]]] = {}
    for i, f in enumerate(face_ids):
        for g_ in face_ids[i + 1:]:
            res = _pair_tile_cycle(pocket, fs, f, g_)
            if res is not None:
                eid = tg.add_edge(f, g_)
                cycles[eid] = res
    return tg, cycles


def quasi_perfect_tiling(pocket: Pocket) -> Tiling:
    """Tiling covering all even finite faces plus a maximum matching of
    the odd faces; certified 2/3-quasi-perfect."""
    if pocket.embedding is None:
        raise EctError("pocket has no embedding; tilings need faces")
    fs = faces(pocket.embedding)
    if fs.outer < 0:
        raise EctError("pocket embedding has no identified outer face")

    finite = fs.finite_faces()
    even_finite = [fid for fid in finite if fs.parity(fid) == 0]
    odd_finite = [fid for fid in finite if fs.parity(fid) == 1]

    tg, pair_cycles = odd_face_tile_graph(pocket, fs, include_infinite=True)
    matching = max_matching(tg)

    tiles: list[Tile] = []
    covered_odd_finite = 0
    pseudo_covered_odd = 0
    pseudo_covers_infinite = fs.parity(fs.outer) == 0  # even outer: covered
    for fid in even_finite:
        walk_nodes = fs.face_nodes(fid)
        if len(set(walk_nodes)) != len(walk_nodes):
            raise EctError(f"face {fid} boundary is not a simple cycle")
        tiles.append(Tile((fid,), walk_nodes, fs.face_edges(fid)))
    for eid in matching.edges:
        e = tg.edges[eid]
        nodes, edges = pair_cycles[eid]
        pseudo_covered_odd += 2
        if fs.outer in (e.u, e.v):
            pseudo_covers_infinite = True
            pseudo_covered_odd -= 1  # the infinite face is odd here
            continue  # drop the tile covering the infinite face
        covered_odd_finite += 2
        tiles.append(Tile((min(e.u, e.v), max(e.u, e.v)), nodes, edges))

    beta = Fraction(covered_odd_finite, len(odd_finite)) if odd_finite \
        else Fraction(1)
    psi = Fraction(len(even_finite), len(finite)) if finite else Fraction(1)

    all_faces = len(fs.faces)
    odd_all = len(odd_finite) + (1 if fs.parity(fs.outer) == 1 else 0)
    even_all = all_faces - odd_all
    pseudo_covered = pseudo_covered_odd + (1 if fs.parity(fs.outer) == 1
                                           and pseudo_covers_infinite else 0)
    tiling = Tiling(
        tiles, beta, psi, fs,
        pseudo_covers_infinite=pseudo_covers_infinite,
        pseudo_beta_all=(Fraction(pseudo_covered, odd_all) if odd_all
                         else Fraction(1)),
        pseudo_psi_all=Fraction(even_all, all_faces) if all_faces else Fraction(1),
    )
    if tiling.certificate() < TWO_THIRDS:
        raise QuasiPerfectViolation(
            f"certificate {tiling.certificate()} < 2/3 on a minimal pocket "
            f"(beta={beta}, psi={psi})")
    return tiling


def tiling_violations(pocket: Pocket, tiling: Tiling) -> list[str]:
    """Re-check every Tile/Tiling invariant from scratch."""
    out: list[str] = []
    fs = tiling.faceset
    seen_faces: list[int] = []
    for t in tiling.tiles:
        seen_faces.extend(t.faces)
        if fs.outer in t.faces:
            out.append(f"tile {t.faces} covers the infinite face")
        if not cycle_is_even(pocket.graph.edges[e].parity
                             for e in t.cycle_edges):
            out.append(f"tile {t.faces} cycle is not even")
        if len(set(t.cycle_nodes)) != len(t.cycle_nodes):
            out.append(f"tile {t.faces} cycle is not simple")
        if t.is_pair:
            f, g_ = t.faces
            ef = _face_boundary_edges(fs, f)
            eg = _face_boundary_edges(fs, g_)
            if not (ef & eg):
                out.append(f"pair tile {t.faces} faces share no edge")
            elif set(t.cycle_edges) != (ef | eg) - (ef & eg):
                out.append(f"pair tile {t.faces} cycle is not the symmetric "
                           "difference")
            if fs.parity(f) != 1 or fs.parity(g_) != 1:
                out.append(f"pair tile {t.faces} must pair odd faces")
        else:
            fid = t.faces[0]
            if fs.parity(fid) != 0:
                out.append(f"single tile {fid} is not an even face")
            if set(t.cycle_edges) != _face_boundary_edges(fs, fid):
                out.append(f"single tile {fid} cycle is not its boundary")
    if len(seen_faces) != len(set(seen_faces)):
        out.append("a face is covered by more than one tile")
    covered = set(seen_faces)
    for fid in fs.finite_faces():
        if fs.parity(fid) == 0 and fid not in covered:
            out.append(f"even finite face {fid} is not covered")
    # recompute beta and psi
    finite = fs.finite_faces()
    even_finite = [f for f in finite if fs.parity(f) == 0]
    odd_finite = [f for f in finite if fs.parity(f) == 1]
    beta = Fraction(len([f for f in covered if f in odd_finite]),
                    len(odd_finite)) if odd_finite else Fraction(1)
    psi = Fraction(len(even_finite), len(finite)) if finite else Fraction(1)
    if beta != tiling.beta:
        out.append(f"beta mismatch: {beta} != {tiling.beta}")
    if psi != tiling.psi:
        out.append(f"psi mismatch: {psi} != {tiling.psi}")
    if beta * (1 - psi) + 2 * psi < TWO_THIRDS:
        out.append("quasi-perfect certificate below 2/3")
    return out


def verify_tiling(pocket: Pocket, tiling: Tiling) -> bool:
    return not tiling_violations(pocket, tiling)
