"""Embedded, node-weighted planar instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import Embedding, embed_from_coordinates
from .graph import Graph

BIG_COST_THRESHOLD = Fraction(10 ** 6)


@dataclass
class Instance:
    graph: Graph
    coords: dict[int, tuple[Fraction, Fraction]]
    rot_override: dict[int, list[tuple[int, int]]] | None = None
    name: str = ""
    _embedding: Embedding | None = field(default=None, repr=False)

    def embedding(self) -> Embedding:
        if self._embedding is None:
            self._embedding = embed_from_coordinates(
                self.graph, self.coords, self.rot_override)
        return self._embedding

    def big_cost_nodes(self) -> set[int]:
        """Nodes carrying the 'effectively infinite' sentinel costs."""
        return {v for v, c in self.graph.cost.items()
                if c >= BIG_COST_THRESHOLD}

    def same_as(self, other: "Instance") -> bool:
        a, b = self.graph, other.graph
        if a.nodes() != b.nodes() or a.edge_ids() != b.edge_ids():
            return False
        if any(a.cost[v] != b.cost[v] for v in a.nodes()):
            return False
        if any((a.edges[e].u, a.edges[e].v, a.edges[e].parity)
               != (b.edges[e].u, b.edges[e].v, b.edges[e].parity)
               for e in a.edge_ids()):
            return False
        if self.coords != other.coords:
            return False
        return (self.rot_override or None) == (other.rot_override or None)


def big_cost_value(finite_total: Fraction) -> Fraction:
    """Sentinel for 'infinite' node weights: 10^6 times the finite mass."""
    return Fraction(10 ** 6) * max(finite_total, Fraction(1))
