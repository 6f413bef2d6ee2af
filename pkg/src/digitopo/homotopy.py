"""Simple points and edges, contractible transformations, reduction.

A transformation is accepted only when its contractibility precondition
holds, so every replayed trace is a proof object: accepted steps preserve
the Euler characteristic and homology of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Optional, Union

from . import _kernels as kernels
from .graph import (
    Graph,
    build_graph,
    canonical_key,
    edge_rim,
    induced_subgraph,
    rim,
)


class TransformationError(ValueError):
    """A contractible-transformation precondition failed."""


# ---------------------------------------------------------------------------
# steps and traces


@dataclass(frozen=True)
class DeletePoint:
    v: str


@dataclass(frozen=True)
class AttachPoint:
    v: str
    rim: frozenset[str]


@dataclass(frozen=True)
class DeleteEdge:
    u: str
    v: str


@dataclass(frozen=True)
class AttachEdge:
    u: str
    v: str


Step = Union[DeletePoint, AttachPoint, DeleteEdge, AttachEdge]


@dataclass(frozen=True)
class HomotopyTrace:
    """A replayable sequence of contractible transformations."""

    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __add__(self, other: "HomotopyTrace") -> "HomotopyTrace":
        return HomotopyTrace(self.steps + other.steps)

    def to_obj(self) -> list[dict[str, Any]]:
        out: list[dict[str, Any]] = []
        for s in self.steps:
            if isinstance(s, DeletePoint):
                out.append({"op": "delete-point", "v": s.v})
            elif isinstance(s, AttachPoint):
                out.append({"op": "attach-point", "v": s.v, "rim": sorted(s.rim)})
            elif isinstance(s, DeleteEdge):
                out.append({"op": "delete-edge", "u": s.u, "v": s.v})
            else:
                out.append({"op": "attach-edge", "u": s.u, "v": s.v})
        return out

    @staticmethod
    def from_obj(obj: Any) -> "HomotopyTrace":
        if not isinstance(obj, list):
            raise TransformationError("trace must be an array of step objects")
        steps: list[Step] = []
        for i, item in enumerate(obj):
            if not isinstance(item, dict) or "op" not in item:
                raise TransformationError(f"step {i}: not a step object")
            op = item["op"]
            try:
                if op == "delete-point":
                    steps.append(DeletePoint(item["v"]))
                elif op == "attach-point":
                    steps.append(AttachPoint(item["v"], frozenset(item["rim"])))
                elif op == "delete-edge":
                    steps.append(DeleteEdge(item["u"], item["v"]))
                elif op == "attach-edge":
                    steps.append(AttachEdge(item["u"], item["v"]))
                else:
                    raise TransformationError(f"step {i}: unknown op {op!r}")
            except KeyError as exc:
                raise TransformationError(f"step {i}: missing field {exc}") from exc
        return HomotopyTrace(tuple(steps))


# ---------------------------------------------------------------------------
# simplicity tests


def _contractible_masks(g: Graph) -> bool:
    return kernels.is_contractible(g.order, g._rows)


def is_simple_point(g: Graph, v: str) -> bool:
    """True when the rim of ``v`` is contractible."""
    return _contractible_masks(rim(g, v))


def is_simple_edge(g: Graph, u: str, v: str) -> bool:
    """True when the common-neighbor rim of the edge is contractible."""
    return _contractible_masks(edge_rim(g, u, v))


def is_contractible(g: Graph, return_trace: bool = False):
    """Exact decision: can simple-point deletions reduce ``g`` to one point?

    The kernel runs a greedy pass first (minimum degree order) and falls back
    to full backtracking before answering False, with memoization on
    canonical forms. The empty graph is not contractible.

    With ``return_trace=True`` returns ``(bool, HomotopyTrace | None)`` where
    the trace replays the witnessing deletions.
    """
    verdict = _contractible_masks(g)
    if not return_trace:
        return verdict
    if not verdict:
        return False, None
    order = kernels.contraction_order(g.order, g._rows)
    assert order is not None
    steps = tuple(DeletePoint(g.vertices[i]) for i in order)
    return True, HomotopyTrace(steps)


# ---------------------------------------------------------------------------
# applying transformations


def apply_transformation(g: Graph, step: Step) -> Graph:
    """Apply one contractible transformation, validating its precondition."""
    if isinstance(step, DeletePoint):
        if not g.has_vertex(step.v):
            raise TransformationError(f"delete-point {step.v!r}: vertex not present")
        if not is_simple_point(g, step.v):
            raise TransformationError(f"delete-point {step.v!r}: rim is not contractible")
        return induced_subgraph(g, [w for w in g.vertices if w != step.v])

    if isinstance(step, AttachPoint):
        if g.has_vertex(step.v):
            raise TransformationError(f"attach-point {step.v!r}: label already present")
        missing = [w for w in step.rim if not g.has_vertex(w)]
        if missing:
            raise TransformationError(f"attach-point {step.v!r}: unknown rim vertices {missing}")
        if not _contractible_masks(induced_subgraph(g, step.rim)):
            raise TransformationError(
                f"attach-point {step.v!r}: rim set does not induce a contractible subgraph"
            )
        vs = list(g.vertices) + [step.v]
        es = list(g.edges()) + [(step.v, w) for w in sorted(step.rim)]
        return build_graph(vs, es)

    if isinstance(step, DeleteEdge):
        if not g.has_edge(step.u, step.v):
            raise TransformationError(f"delete-edge ({step.u!r}, {step.v!r}): not an edge")
        if not is_simple_edge(g, step.u, step.v):
            raise TransformationError(
                f"delete-edge ({step.u!r}, {step.v!r}): edge rim is not contractible"
            )
        drop = {frozenset((step.u, step.v))}
        es = [e for e in g.edges() if frozenset(e) not in drop]
        return build_graph(list(g.vertices), es)

    if isinstance(step, AttachEdge):
        for w in (step.u, step.v):
            if not g.has_vertex(w):
                raise TransformationError(f"attach-edge: vertex {w!r} not present")
        if step.u == step.v:
            raise TransformationError("attach-edge: endpoints coincide")
        if g.has_edge(step.u, step.v):
            raise TransformationError(f"attach-edge ({step.u!r}, {step.v!r}): already an edge")
        common = set(g.neighbors(step.u)) & set(g.neighbors(step.v))
        if not _contractible_masks(induced_subgraph(g, common)):
            raise TransformationError(
                f"attach-edge ({step.u!r}, {step.v!r}): common-neighbor rim is not contractible"
            )
        es = list(g.edges()) + [(step.u, step.v)]
        return build_graph(list(g.vertices), es)

    raise TransformationError(f"unknown step {step!r}")


def apply_trace(g: Graph, trace: HomotopyTrace) -> Graph:
    """Replay a trace, validating every step at its moment."""
    cur = g
    for i, step in enumerate(trace):
        try:
            cur = apply_transformation(cur, step)
        except TransformationError as exc:
            raise TransformationError(f"step {i}: {exc}") from exc
    return cur


def invert_step(before: Graph, step: Step) -> Step:
    """The inverse transformation, valid on the graph that ``step`` produces."""
    if isinstance(step, DeletePoint):
        return AttachPoint(step.v, frozenset(before.neighbors(step.v)))
    if isinstance(step, AttachPoint):
        return DeletePoint(step.v)
    if isinstance(step, DeleteEdge):
        return AttachEdge(step.u, step.v)
    if isinstance(step, AttachEdge):
        return DeleteEdge(step.u, step.v)
    raise TransformationError(f"unknown step {step!r}")


def invert_trace(source: Graph, trace: HomotopyTrace) -> HomotopyTrace:
    """Trace running the transformation backwards (target back to source)."""
    cur = source
    inverses = []
    for step in trace:
        inverses.append(invert_step(cur, step))
        cur = apply_transformation(cur, step)
    return HomotopyTrace(tuple(reversed(inverses)))


# ---------------------------------------------------------------------------
# greedy reduction


def reduce(g: Graph) -> tuple[Graph, HomotopyTrace]:
    """Delete simple points greedily until none remain.

    Deterministic: each round removes the simple vertex with the smallest
    degree, ties broken by label order. The residue is homotopy equivalent
    to the input by construction.
    """
    cur = g
    steps: list[Step] = []
    simple = {v: is_simple_point(cur, v) for v in cur.vertices}
    while True:
        candidates = [v for v, ok in simple.items() if ok]
        if not candidates:
            break
        v = min(candidates, key=lambda w: (cur.degree(w), w))
        touched = cur.neighbors(v)
        steps.append(DeletePoint(v))
        cur = induced_subgraph(cur, [w for w in cur.vertices if w != v])
        del simple[v]
        for u in touched:
            simple[u] = is_simple_point(cur, u)
    return cur, HomotopyTrace(tuple(steps))


# ---------------------------------------------------------------------------
# homotopy equivalence (semi-decision)


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of the equivalence semi-decision.

    ``Equivalent`` carries a pair of traces replaying the two inputs to
    isomorphic graphs. ``Distinguished`` names the invariant that separates
    them. ``Unknown`` means the bounded search gave up.
    """

    status: str  # "Equivalent" | "Distinguished" | "Unknown"
    traces: Optional[tuple[HomotopyTrace, HomotopyTrace]] = None
    invariant: Optional[str] = None
    values: Optional[tuple] = None

    def to_obj(self) -> dict[str, Any]:
        out: dict[str, Any] = {"status": self.status}
        if self.traces is not None:
            out["traces"] = [t.to_obj() for t in self.traces]
        if self.invariant is not None:
            out["invariant"] = self.invariant
            out["values"] = list(self.values or ())
        return out


def _search_moves(g: Graph) -> Iterator[tuple[Step, Graph]]:
    """Neighbor states for the bounded search.

    Moves are deletions of simple points and edges plus attachments of
    simple edges. Point attachments are excluded: their rim-set choice is
    unbounded, and the remaining moves already connect the graphs this
    search is used on.
    """
    for v in sorted(g.vertices):
        if is_simple_point(g, v):
            yield DeletePoint(v), induced_subgraph(g, [w for w in g.vertices if w != v])
    vs = sorted(g.vertices)
    for i, u in enumerate(vs):
        for v in vs[i + 1 :]:
            if g.has_edge(u, v):
                if is_simple_edge(g, u, v):
                    es = [e for e in g.edges() if frozenset(e) != frozenset((u, v))]
                    yield DeleteEdge(u, v), build_graph(list(g.vertices), es)
            else:
                common = set(g.neighbors(u)) & set(g.neighbors(v))
                if common and _contractible_masks(induced_subgraph(g, common)):
                    es = list(g.edges()) + [(u, v)]
                    yield AttachEdge(u, v), build_graph(list(g.vertices), es)


def _bidirectional_connect(
    a: Graph, b: Graph, budget: int
) -> Optional[tuple[HomotopyTrace, HomotopyTrace]]:
    """Meet-in-the-middle search over contractible transformations.

    Every generated state is greedily reduced before it enters a frontier,
    which collapses whole families of intermediate states onto their
    residues; the reduction steps become part of the witness path, so the
    restriction costs completeness only, never soundness.
    """
    sides = [
        {canonical_key(a): (a, [])},
        {canonical_key(b): (b, [])},
    ]
    frontiers = [list(sides[0].items()), list(sides[1].items())]
    spent = 0
    while spent < budget and (frontiers[0] or frontiers[1]):
        side = 0 if (frontiers[0] and len(frontiers[0]) <= len(frontiers[1])) or not frontiers[1] else 1
        new_frontier = []
        for key, (graph, path) in frontiers[side]:
            if spent >= budget:
                break
            spent += 1
            for step, nxt in _search_moves(graph):
                nxt_res, red = reduce(nxt)
                nkey = canonical_key(nxt_res)
                if nkey in sides[side]:
                    continue
                sides[side][nkey] = (nxt_res, path + [step] + list(red.steps))
                new_frontier.append((nkey, sides[side][nkey]))
                if nkey in sides[1 - side]:
                    here = sides[side][nkey][1]
                    there = sides[1 - side][nkey][1]
                    fwd = here if side == 0 else there
                    bwd = there if side == 0 else here
                    return HomotopyTrace(tuple(fwd)), HomotopyTrace(tuple(bwd))
        frontiers[side] = new_frontier
    return None


def homotopy_equivalent(g: Graph, h: Graph, budget: int = 4000) -> EquivalenceVerdict:
    """Semi-decide homotopy equivalence.

    Equivalent when the greedy residues are isomorphic or a bounded
    bidirectional search over contractible transformations connects them
    (budget counts node expansions); Distinguished when the Euler
    characteristic or a Betti number differs; Unknown otherwise. An
    Equivalent verdict always carries replayable witness traces.
    """
    from .invariants import euler_characteristic, homology, same_profile

    red_g, trace_g = reduce(g)
    red_h, trace_h = reduce(h)
    if canonical_key(red_g) == canonical_key(red_h):
        return EquivalenceVerdict("Equivalent", traces=(trace_g, trace_h))

    # residues carry the same invariants as the inputs
    eg, eh = euler_characteristic(red_g), euler_characteristic(red_h)
    if eg != eh:
        return EquivalenceVerdict("Distinguished", invariant="euler", values=(eg, eh))
    pg, ph = homology(red_g), homology(red_h)
    if not same_profile(pg, ph):
        for k in range(max(len(pg.betti_q), len(ph.betti_q))):
            bg = pg.betti_q[k] if k < len(pg.betti_q) else 0
            bh = ph.betti_q[k] if k < len(ph.betti_q) else 0
            if bg != bh:
                return EquivalenceVerdict(
                    "Distinguished", invariant=f"betti_q[{k}]", values=(bg, bh)
                )
        return EquivalenceVerdict(
            "Distinguished", invariant="homology", values=(pg.describe(), ph.describe())
        )

    found = _bidirectional_connect(red_g, red_h, budget)
    if found is not None:
        fwd, bwd = found
        return EquivalenceVerdict("Equivalent", traces=(trace_g + fwd, trace_h + bwd))
    return EquivalenceVerdict("Unknown")
