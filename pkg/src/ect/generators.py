"""Instance generators: grids, random grid subgraphs, and the figure
families (pentagon rings, handle chains, triangle/dodecagon tessellation).

Figure families are closed so that the intended parities are realized on
a finite patch:

* pentagon_ring: k pentagons chained between black junctions, closed by
  an odd black path.  Exactly one pentagon is flipped (its 3-edge blue
  route faces the inner region) so the inner face is even while the
  bottom path stays odd and k stays even.  Blue nodes cost 1, red nodes
  1 + eps, black nodes carry the big sentinel cost.
* handle_chain: one piece containing a green pentagon (cost 2) plus k
  striped pentagons (cost 1), chained between two hubs; the hubs are
  also joined by an even and an odd black path whose pair merges to a
  twin, keeping the 2-compression alive while every even cycle runs
  through the pentagon chain.
* tessellation: a strip of dodecagons with triangles at the shared-edge
  corners plus one capping triangle per end, giving the 2:1
  triangle:dodecagon census; no two triangles are adjacent, so a maximum
  tiling covers only the even dodecagons.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OddK
from .graph import Graph
from .instance import Instance, big_cost_value

Coord = tuple[Fraction, Fraction]


@dataclass
class InstanceSpec:
    generator: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Instance:
        fn = GENERATORS[self.generator]
        return fn(seed=self.seed, **self.params)

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.generator}({inner};seed={self.seed})"


class _B:
    """Incremental instance builder with coordinate-keyed nodes."""

    def __init__(self) -> None:
        self.g = Graph()
        self.coords: dict[int, Coord] = {}
        self._by_coord: dict[Coord, int] = {}

    def node(self, x, y, cost) -> int:
        key = (Fraction(x), Fraction(y))
        if key in self._by_coord:
            return self._by_coord[key]
        nid = self.g.num_nodes()
        self.g.add_node(nid, cost)
        self.coords[nid] = key
        self._by_coord[key] = nid
        return nid

    def edge(self, u: int, v: int) -> int:
        return self.g.add_edge(u, v)

    def path(self, u: int, v: int, pts, cost) -> None:
        prev = u
        for x, y in pts:
            n = self.node(x, y, cost)
            self.edge(prev, n)
            prev = n
        self.edge(prev, v)

    def instance(self, name: str) -> Instance:
        return Instance(self.g, self.coords, name=name)


def gen_grid(w: int, h: int, cost_lo: int = 1, cost_hi: int = 1,
             seed: int = 0) -> Instance:
    """w x h grid graph with integer coordinates and seeded integer costs."""
    assert w >= 1 and h >= 1
    rng = random.Random(seed)
    b = _B()
    for y in range(h):
        for x in range(w):
            b.node(x, y, rng.randint(cost_lo, cost_hi))
    nid = lambda x, y: y * w + x
    for y in range(h):
        for x in range(w):
            if x + 1 < w:
                b.edge(nid(x, y), nid(x + 1, y))
            if y + 1 < h:
                b.edge(nid(x, y), nid(x, y + 1))
    return b.instance(f"grid-{w}x{h}-c{cost_lo}..{cost_hi}-s{seed}")


def gen_grid_subgraph(w: int, h: int, keep: float = 0.85,
                      cost_lo: int = 1, cost_hi: int = 9,
                      seed: int = 0) -> Instance:
    """Random induced subgraph of a grid (the random planar generator)."""
    rng = random.Random(seed)
    b = _B()
    kept: dict[tuple[int, int], int] = {}
    for y in range(h):
        for x in range(w):
            if rng.random() < keep:
                kept[(x, y)] = b.node(x, y, rng.randint(cost_lo, cost_hi))
    for (x, y), nid in sorted(kept.items(), key=lambda kv: kv[1]):
        if (x + 1, y) in kept:
            b.edge(nid, kept[(x + 1, y)])
        if (x, y + 1) in kept:
            b.edge(nid, kept[(x, y + 1)])
    return b.instance(f"gridsub-{w}x{h}-k{keep}-s{seed}")


def gen_pentagon_ring(k: int, eps: Fraction = Fraction(1, 4),
                      seed: int = 0) -> Instance:
    """Ring of k pentagons (k even) between black junctions, closed by an
    odd black path; blue cost 1, red cost 1+eps, black the big sentinel."""
    if k % 2 != 0 or k < 2:
        raise OddK("pentagon ring needs an even k >= 2")
    eps = Fraction(eps)
    finite_total = (k + 1) * 1 + (2 * (k - 1) + 1) * (1 + eps)
    big = big_cost_value(Fraction(finite_total))
    b = _B()
    junctions = [b.node(4 * i, 0, big) for i in range(k + 1)]
    for i in range(1, k + 1):
        ja, jb = junctions[i - 1], junctions[i]
        x0 = 4 * (i - 1)
        if i == 1:
            # flipped pentagon: 3-edge blue route faces the inner region
            b.path(ja, jb, [(x0 + 1, 1), (x0 + 3, 1)], Fraction(1))
            b.path(ja, jb, [(x0 + 2, 3)], 1 + eps)
        else:
            b.path(ja, jb, [(x0 + 2, 1)], Fraction(1))
            b.path(ja, jb, [(x0 + 1, 3), (x0 + 3, 3)], 1 + eps)
    # odd black bottom path (length 3), drawn below everything
    b.path(junctions[k], junctions[0], [(3 * k, -2), (k, -2)], big)
    return b.instance(f"pentring-k{k}-eps{eps}")


def gen_handle_chain(k: int, seed: int = 0) -> Instance:
    """One piece holding a green pentagon plus k striped pentagons (k odd),
    between two hubs that are also joined by an even and an odd black path."""
    if k % 2 != 1 or k < 1:
        raise OddK("handle chain needs an odd k >= 1")
    pentagons = k + 1  # green first, then k striped
    finite_total = Fraction(3 * 2 + 3 * k)
    big = big_cost_value(finite_total)
    b = _B()
    u = b.node(0, 0, big)
    v = b.node(8 * pentagons + 2, 0, big)
    prev = u
    for i in range(1, pentagons + 1):
        cost = Fraction(2) if i == 1 else Fraction(1)
        x_i = b.node(8 * i - 6, 2, big)
        y_i = b.node(8 * i - 2, 2, big)
        b.edge(prev, x_i)
        # short handle (one mid, above) and long handle (two mids, below)
        b.path(x_i, y_i, [(8 * i - 4, 4)], cost)
        b.path(x_i, y_i, [(8 * i - 5, 1), (8 * i - 3, 1)], cost)
        prev = y_i
    b.edge(prev, v)
    # even black path and odd black path close the frame; their parities
    # differ so the pair merges into a twin edge during compression
    xm = 4 * pentagons
    b.path(u, v, [(xm, -2)], big)                      # length 2, even
    b.path(u, v, [(xm - 2, -4), (xm + 2, -4)], big)    # length 3, odd
    return b.instance(f"handlechain-k{k}")


_DODECA = [(3, 1), (2, 2), (1, 3), (-1, 3), (-2, 2), (-3, 1),
           (-3, -1), (-2, -2), (-1, -3), (1, -3), (2, -2), (3, -1)]


def gen_tessellation(reps: int, cost_lo: int = 1, cost_hi: int = 1,
                     seed: int = 0) -> Instance:
    """Strip of the 3.12.12 tessellation: reps dodecagons, 2*reps triangles
    (pairwise non-adjacent), integer coordinates."""
    assert reps >= 1
    rng = random.Random(seed)
    b = _B()

    def cost() -> Fraction:
        return Fraction(rng.randint(cost_lo, cost_hi))

    rings = []
    for t in range(reps):
        cx = 6 * t
        ring = [b.node(cx + x, y, cost()) for x, y in _DODECA]
        for i in range(12):
            a, c = ring[i], ring[(i + 1) % 12]
            key = (min(a, c), max(a, c))
            if not any((min(e.u, e.v), max(e.u, e.v)) == key
                       for e in b.g.edges.values()):
                b.edge(a, c)
        rings.append(ring)
    # interior triangles: at both corners of every shared edge
    for t in range(reps - 1):
        cx = 6 * t
        top = b.node(cx + 3, 1, cost())
        ta = b.node(cx + 2, 2, cost())
        tb = b.node(cx + 4, 2, cost())
        b.edge(ta, tb)
        bot = b.node(cx + 3, -1, cost())
        ba = b.node(cx + 2, -2, cost())
        bb = b.node(cx + 4, -2, cost())
        b.edge(ba, bb)
    # end caps: one outward triangle per strip end (apex degree 2)
    la = b.node(-3, 1, cost())
    lb = b.node(-3, -1, cost())
    apex_l = b.node(-5, 0, cost())
    b.edge(la, apex_l)
    b.edge(apex_l, lb)
    cx = 6 * (reps - 1)
    ra = b.node(cx + 3, 1, cost())
    rb = b.node(cx + 3, -1, cost())
    apex_r = b.node(cx + 5, 0, cost())
    b.edge(ra, apex_r)
    b.edge(apex_r, rb)
    return b.instance(f"tess-{reps}-c{cost_lo}..{cost_hi}-s{seed}")


GENERATORS = {
    "grid": gen_grid,
    "grid_subgraph": gen_grid_subgraph,
    "pentagon_ring": gen_pentagon_ring,
    "handle_chain": gen_handle_chain,
    "tessellation": gen_tessellation,
}
