"""Edge-to-point replacement: grow a manifold without changing its topology.

Replacing an edge (u, v) with a fresh point x adjacent to u, v and all of
their common neighbors, then removing the edge, is a pair of contractible
transformations. On a digital n-manifold it yields a digital n-manifold
with one more vertex and the same homotopy type.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, build_graph, edge_rim
from .homotopy import AttachPoint, DeleteEdge, HomotopyTrace


@dataclass(frozen=True)
class RStep:
    """Record of one edge-to-point replacement."""

    edge: tuple[str, str]
    new_point: str
    rim_labels: tuple[str, ...]  # u, v and their common neighbors

    def to_trace(self) -> HomotopyTrace:
        """Expansion into the underlying attach-point and delete-edge pair."""
        u, v = self.edge
        return HomotopyTrace(
            (
                AttachPoint(self.new_point, frozenset(self.rim_labels)),
                DeleteEdge(u, v),
            )
        )


def r_transform(m: Graph, u: str, v: str, x: str) -> tuple[Graph, RStep]:
    """Replace the edge (u, v) with the fresh point ``x``.

    The new point's rim is u, v and every common neighbor of the edge; the
    edge itself is removed. Vertex count rises by exactly one and edge count
    by exactly one plus the number of common neighbors.
    """
    if not m.has_vertex(u) or not m.has_vertex(v):
        missing = u if not m.has_vertex(u) else v
        raise GraphError(f"vertex {missing!r} not in graph")
    if not m.has_edge(u, v):
        raise GraphError(f"({u!r}, {v!r}) is not an edge")
    if m.has_vertex(x):
        raise GraphError(f"label {x!r} is already a vertex")
    shared = edge_rim(m, u, v).vertices
    rim_labels = tuple(sorted({u, v, *shared}))
    vs = list(m.vertices) + [x]
    es = [e for e in m.edges() if frozenset(e) != frozenset((u, v))]
    es += [(x, w) for w in rim_labels]
    out = build_graph(vs, es)
    if out.order != m.order + 1 or out.size != m.size + len(shared) + 1:
        raise AssertionError("edge-to-point replacement produced inconsistent counts")
    return out, RStep((u, v), x, rim_labels)


def fresh_label(g: Graph, stem: str = "x") -> str:
    """First label of the form stem1, stem2, ... not used by the graph."""
    k = 1
    while g.has_vertex(f"{stem}{k}"):
        k += 1
    return f"{stem}{k}"
