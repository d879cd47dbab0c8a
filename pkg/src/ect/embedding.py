"""Combinatorial planar embeddings: rotation systems, faces, duals.

A dart is (edge id, end) with end 0 meaning u->v and 1 meaning v->u; the
rotation at a node lists the darts leaving it in counterclockwise
angular order.  Face walks follow next(d) = predecessor of twin(d) in
the rotation at head(d); with CCW rotations every bounded face comes out
with positive shoelace area and the outer face is the unique walk with
negative total area.  Edges may carry polylines (preimage routes of
compressed edges) so that area stays meaningful after folding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EulerCheckFailed, MissingCoordinates
from .graph import EVEN, ODD, TWIN, Graph

Dart = tuple[int, int]


def dart_tail(g: Graph, d: Dart) -> int:
    e = g.edges[d[0]]
    return e.u if d[1] == 0 else e.v


def dart_head(g: Graph, d: Dart) -> int:
    e = g.edges[d[0]]
    return e.v if d[1] == 0 else e.u


def twin(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


class Embedding:
    """Rotation system over a Graph, with optional coordinates/polylines."""

    def __init__(self, g: Graph, rot: dict[int, list[Dart]],
                 coords: dict[int, tuple[Fraction, Fraction]] | None = None,
                 polylines: dict[int, list[int]] | None = None):
        self.g = g
        self.rot = rot
        self.coords = coords
        # edge id -> node-id route (for compressed edges); nodes must have coords
        self.polylines = polylines or {}
        self._index: dict[Dart, int] = {}
        self._dart_node: dict[Dart, int] = {}
        for v, darts in rot.items():
            for i, d in enumerate(darts):
                if d in self._index:
                    raise ValueError(f"dart {d} appears twice in rotation system")
                self._index[d] = i
                self._dart_node[d] = v
        self.validate()

    def validate(self) -> None:
        for eid in self.g.edge_ids():
            for end in (0, 1):
                d = (eid, end)
                t = dart_tail(self.g, d)
                if self._dart_node.get(d) != t:
                    raise ValueError(f"dart {d} missing from rotation at node {t}")

    def next_in_face(self, d: Dart) -> Dart:
        # predecessor of twin(d) in the CCW rotation: bounded faces come out
        # counterclockwise (positive shoelace), the outer face clockwise
        v = dart_head(self.g, d)
        darts = self.rot[v]
        i = self._index[twin(d)]
        return darts[(i - 1) % len(darts)]

    def edge_route(self, eid: int) -> list[int]:
        if eid in self.polylines:
            return self.polylines[eid]
        e = self.g.edges[eid]
        return [e.u, e.v]

    def restricted(self, keep_nodes) -> "Embedding":
        """Induced sub-embedding on a node subset (sub-drawing of a plane graph)."""
        keep = set(keep_nodes)
        kept_edges = {eid for eid, e in self.g.edges.items()
                      if e.u in keep and e.v in keep}
        h = self.g.induced(keep)
        rot = {v: [d for d in self.rot[v] if d[0] in kept_edges]
               for v in sorted(keep)}
        # keep the full coordinate map: polylines may route through folded
        # nodes that are no longer graph nodes
        poly = {eid: self.polylines[eid] for eid in kept_edges
                if eid in self.polylines}
        return Embedding(h, rot, self.coords, poly)


@dataclass
class Face:
    fid: int
    darts: list[Dart]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass
class FaceSet:
    embedding: Embedding
    faces: list[Face]
    outer: int  # face id
    face_of_dart: dict[Dart, int] = field(default_factory=dict)

    def face_nodes(self, fid: int) -> list[int]:
        g = self.embedding.g
        return [dart_tail(g, d) for d in self.faces[fid].darts]

    def face_edges(self, fid: int) -> list[int]:
        return [d[0] for d in self.faces[fid].darts]

    def boundary_length(self, fid: int) -> int:
        return len(self.faces[fid].darts)

    def parity(self, fid: int) -> int:
        """0 = even, 1 = odd (twin edges force even)."""
        total = 0
        for d in self.faces[fid].darts:
            p = self.embedding.g.edges[d[0]].parity
            if p == TWIN:
                return 0
            total ^= p
        return total

    def is_outer(self, fid: int) -> bool:
        return fid == self.outer

    def finite_faces(self) -> list[int]:
        return [f.fid for f in self.faces if f.fid != self.outer]


def face_parity(fs: FaceSet, fid: int) -> int:
    return fs.parity(fid)


def _signed_area2(coords, route) -> Fraction:
    """Twice the signed area of the closed polyline through route."""
    total = Fraction(0)
    for a, b in zip(route, route[1:] + route[:1]):
        xa, ya = coords[a]
        xb, yb = coords[b]
        total += xa * yb - xb * ya
    return total


def faces(emb: Embedding, check_euler: bool = True) -> FaceSet:
    """Trace all face walks; outer face by most negative signed area."""
    g = emb.g
    all_darts = []
    for eid in g.edge_ids():
        all_darts.append((eid, 0))
        all_darts.append((eid, 1))
    seen: set[Dart] = set()
    out_faces: list[Face] = []
    face_of: dict[Dart, int] = {}
    for d0 in all_darts:
        if d0 in seen:
            continue
        walk = []
        d = d0
        while True:
            walk.append(d)
            seen.add(d)
            d = emb.next_in_face(d)
            if d == d0:
                break
        fid = len(out_faces)
        out_faces.append(Face(fid, walk))
        for d in walk:
            face_of[d] = fid

    outer = _pick_outer(emb, out_faces)
    fs = FaceSet(emb, out_faces, outer, face_of)
    if check_euler:
        _euler_check(emb, fs)
    return fs


def _pick_outer(emb: Embedding, out_faces: list[Face]) -> int:
    if not out_faces:
        return -1
    if emb.coords is None:
        return -1
    g = emb.g
    best = None
    for f in out_faces:
        route: list[int] = []
        for d in f.darts:
            r = emb.edge_route(d[0])
            if dart_tail(g, d) != r[0]:
                r = r[::-1]
            route.extend(r[:-1])
        area = _signed_area2(emb.coords, route)
        if best is None or area < best[0] or (area == best[0] and f.fid < best[1]):
            best = (area, f.fid)
    return best[1]


def _euler_check(emb: Embedding, fs: FaceSet) -> None:
    g = emb.g
    for comp in g.components():
        cset = set(comp)
        e_count = sum(1 for e in g.edges.values() if e.u in cset)
        if e_count == 0:
            continue
        f_count = 0
        for f in fs.faces:
            if dart_tail(g, f.darts[0]) in cset:
                f_count += 1
        if len(comp) - e_count + f_count != 2:
            raise EulerCheckFailed(
                f"component with {len(comp)} nodes, {e_count} edges traced "
                f"{f_count} faces; rotation system is not planar")


def embed_from_coordinates(g: Graph,
                           coords: dict[int, tuple[Fraction, Fraction]],
                           rot_override: dict[int, list[Dart]] | None = None
                           ) -> Embedding:
    """Rotation = CCW angular order of darts; assumes a planar drawing."""
    for v in g.nodes():
        if v not in coords:
            raise MissingCoordinates(f"node {v} has no coordinates")
    rot: dict[int, list[Dart]] = {}
    for v in g.nodes():
        if rot_override and v in rot_override:
            rot[v] = list(rot_override[v])
            continue
        darts: list[Dart] = []
        for eid in g.incident(v):
            e = g.edges[eid]
            if e.is_loop:
                darts.append((eid, 0))
                darts.append((eid, 1))
            else:
                darts.append((eid, 0) if e.u == v else (eid, 1))
        rot[v] = sorted(darts, key=lambda d: _angle_key(g, coords, v, d))
    emb = Embedding(g, rot, coords)
    faces(emb, check_euler=True)
    return emb


def _angle_key(g: Graph, coords, v: int, d: Dart):
    """Sort key: CCW angle classes with exact rational comparisons."""
    w = dart_head(g, d)
    if w == v:
        return (4, 0, 0, d[0], d[1])  # loops last, by id
    xv, yv = coords[v]
    xw, yw = coords[w]
    dx, dy = xw - xv, yw - yv
    # half-plane sweep starting at positive x axis, CCW:
    #   0: dy == 0, dx > 0          (angle 0)
    #   1: dy > 0                   (0, pi)
    #   2: dy == 0, dx < 0          (pi)
    #   3: dy < 0                   (pi, 2pi)
    if dy == 0:
        half = 0 if dx > 0 else 2
        return (half, Fraction(0), Fraction(0), d[0], d[1])
    half = 1 if dy > 0 else 3
    # within a half-plane, CCW order = decreasing dx/dy ratio... use slope
    # comparator: for dy > 0 angle grows as dx/dy decreases; for dy < 0 the
    # same expression keeps growing, so -dx/dy sorts both half-planes CCW.
    slope = Fraction(-dx, dy)
    return (half, slope, Fraction(0), d[0], d[1])


def dual_graph(fs: FaceSet):
    """Planar dual as (Graph, dual eid -> primal eid, primal eid -> dual eid)."""
    g = fs.embedding.g
    dual = Graph()
    for f in fs.faces:
        dual.add_node(f.fid, 0)
    dual_to_primal: dict[int, int] = {}
    primal_to_dual: dict[int, int] = {}
    for eid in g.edge_ids():
        f1 = fs.face_of_dart[(eid, 0)]
        f2 = fs.face_of_dart[(eid, 1)]
        deid = dual.add_edge(f1, f2, parity=g.edges[eid].parity, eid=eid)
        dual_to_primal[deid] = eid
        primal_to_dual[eid] = deid
    return dual, dual_to_primal, primal_to_dual
