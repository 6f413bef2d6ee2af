"""Immutable finite simple undirected graphs and the primitive constructions.

Vertex labels are opaque strings; every algorithm in the package works on
dense internal indices with bitmask adjacency rows. Graphs are values: no
operation mutates its input, so shared graphs are safe under concurrency.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import _kernels as kernels


class GraphError(ValueError):
    """Invalid vertices, edges or operands for a graph operation."""


class Graph:
    """A finite simple undirected graph over string labels.

    Construct through :func:`build_graph`, which validates input. Instances
    are immutable; transformations elsewhere return new graphs.
    """

    __slots__ = ("_labels", "_index", "_rows", "_key")

    def __init__(self, labels: tuple[str, ...], rows: tuple[int, ...]):
        self._labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._rows = rows
        self._key: bytes | None = None

    # -- basic queries ------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._labels

    @property
    def order(self) -> int:
        return len(self._labels)

    @property
    def size(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def has_edge(self, u: str, v: str) -> bool:
        iu = self._index.get(u)
        iv = self._index.get(v)
        if iu is None or iv is None:
            return False
        return bool((self._rows[iu] >> iv) & 1)

    def neighbors(self, v: str) -> tuple[str, ...]:
        i = self._require(v)
        return tuple(sorted(self._labels[j] for j in _bits(self._rows[i])))

    def degree(self, v: str) -> int:
        return self._rows[self._require(v)].bit_count()

    def edges(self) -> tuple[tuple[str, str], ...]:
        out = []
        for i, r in enumerate(self._rows):
            for j in _bits(r):
                if j > i:
                    a, b = sorted((self._labels[i], self._labels[j]))
                    out.append((a, b))
        return tuple(sorted(out))

    def _require(self, v: str) -> int:
        i = self._index.get(v)
        if i is None:
            raise GraphError(f"vertex {v!r} not in graph")
        return i

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self._labels) == set(other._labels) and set(self.edges()) == set(other.edges())

    def __hash__(self) -> int:
        return hash((frozenset(self._labels), frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"Graph({self.order} vertices, {self.size} edges)"

    def __contains__(self, v: str) -> bool:
        return v in self._index


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# construction


def build_graph(vertices: Sequence[str], edges: Iterable[tuple[str, str]] = ()) -> Graph:
    """Build a graph from labels and unordered edge pairs.

    Duplicate edges collapse; duplicate vertices, unknown endpoints and
    self-loops are rejected.
    """
    labels = tuple(vertices)
    for lab in labels:
        if not isinstance(lab, str):
            raise GraphError(f"vertex labels must be strings, got {lab!r}")
    if len(set(labels)) != len(labels):
        dup = next(lab for i, lab in enumerate(labels) if lab in labels[:i])
        raise GraphError(f"duplicate vertex {dup!r}")
    index = {lab: i for i, lab in enumerate(labels)}
    rows = [0] * len(labels)
    for u, v in edges:
        if u == v:
            raise GraphError(f"self-loop ({u!r}, {v!r}) rejected")
        iu = index.get(u)
        iv = index.get(v)
        if iu is None or iv is None:
            bad = u if iu is None else v
            raise GraphError(f"edge ({u!r}, {v!r}) references unknown vertex {bad!r}")
        rows[iu] |= 1 << iv
        rows[iv] |= 1 << iu
    return Graph(labels, tuple(rows))


def from_masks(labels: tuple[str, ...], rows: tuple[int, ...]) -> Graph:
    """Internal fast constructor; callers guarantee symmetry and no loops."""
    return Graph(labels, rows)


# ---------------------------------------------------------------------------
# primitive constructions


def rim(g: Graph, v: str) -> Graph:
    """Induced subgraph on the neighbors of ``v`` (excluding ``v``)."""
    i = g._require(v)
    return _induced_mask(g, g._rows[i])


def ball(g: Graph, v: str) -> Graph:
    """Induced subgraph on ``v`` together with all its neighbors."""
    i = g._require(v)
    return _induced_mask(g, g._rows[i] | (1 << i))


def edge_rim(g: Graph, u: str, v: str) -> Graph:
    """Induced subgraph on the common neighbors of the edge (u, v)."""
    iu = g._require(u)
    iv = g._require(v)
    if not (g._rows[iu] >> iv) & 1:
        raise GraphError(f"({u!r}, {v!r}) is not an edge")
    return _induced_mask(g, g._rows[iu] & g._rows[iv])


def induced_subgraph(g: Graph, keep: Iterable[str]) -> Graph:
    """Induced subgraph on the vertex set ``keep``."""
    mask = 0
    for v in keep:
        mask |= 1 << g._require(v)
    return _induced_mask(g, mask)


def _induced_mask(g: Graph, mask: int) -> Graph:
    verts = _bits(mask)
    labels = tuple(g._labels[i] for i in verts)
    pos = {i: k for k, i in enumerate(verts)}
    rows = []
    for i in verts:
        r = g._rows[i] & mask
        nr = 0
        for j in _bits(r):
            nr |= 1 << pos[j]
        rows.append(nr)
    return Graph(labels, tuple(rows))


def relabeled(g: Graph, mapping: Mapping[str, str]) -> Graph:
    """Rename vertices; labels missing from the map keep their names."""
    labels = tuple(mapping.get(lab, lab) for lab in g._labels)
    if len(set(labels)) != len(labels):
        raise GraphError("relabeling collides")
    return Graph(labels, g._rows)


def join_with_map(g: Graph, h: Graph) -> tuple[Graph, dict[str, str]]:
    """Join of two graphs plus the relabel map applied to the second operand.

    The join keeps both vertex sets, all original edges and every cross
    edge. Colliding labels on the second operand are suffixed until unique;
    the returned map records any renames (empty when none happened).
    """
    taken = set(g._labels)
    renames: dict[str, str] = {}
    h_labels = []
    for lab in h._labels:
        new = lab
        k = 2
        while new in taken or (new != lab and new in h._labels):
            new = f"{lab}~{k}"
            k += 1
        if new != lab:
            renames[lab] = new
        taken.add(new)
        h_labels.append(new)
    ng = g.order
    labels = g._labels + tuple(h_labels)
    cross_h = ((1 << (ng + h.order)) - 1) ^ ((1 << ng) - 1)
    cross_g = (1 << ng) - 1
    rows = [r | cross_h for r in g._rows]
    for r in h._rows:
        rows.append((r << ng) | cross_g)
    return Graph(labels, tuple(rows)), renames


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus all cross edges (relabels on collision)."""
    return join_with_map(g, h)[0]


def canonical_key(g: Graph) -> bytes:
    """Deterministic canonical form: equal keys exactly for isomorphic graphs."""
    if g._key is None:
        g._key = kernels.canon_bytes(g.order, g._rows)
    return g._key


# ---------------------------------------------------------------------------
# connectivity helpers


def is_connected(g: Graph) -> bool:
    return kernels.connected(g.order, g._rows)


def components(g: Graph) -> tuple[tuple[str, ...], ...]:
    """Connected components as sorted label tuples, sorted by first label."""
    n = g.order
    unseen = (1 << n) - 1
    comps = []
    while unseen:
        start = unseen & -unseen
        seen = start
        frontier = start
        while frontier:
            new = 0
            for v in _bits(frontier):
                new |= g._rows[v]
            frontier = new & unseen & ~seen
            seen |= frontier
        unseen &= ~seen
        comps.append(tuple(sorted(g._labels[i] for i in _bits(seen))))
    return tuple(sorted(comps))
