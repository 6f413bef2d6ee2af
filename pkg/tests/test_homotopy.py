"""Simple points/edges, transformations, traces, reduction, equivalence."""

import random

import pytest

from conftest import (
    complete_graph,
    cycle_graph,
    octahedron,
    path_graph,
    random_accepted_steps,
    random_contractible_graph,
    random_graph,
    wheel,
)
from digitopo.graph import build_graph, canonical_key
from digitopo.homotopy import (
    AttachEdge,
    AttachPoint,
    DeleteEdge,
    DeletePoint,
    HomotopyTrace,
    TransformationError,
    apply_trace,
    apply_transformation,
    homotopy_equivalent,
    invert_trace,
    is_contractible,
    is_simple_edge,
    is_simple_point,
    reduce,
)


class TestSimplePoints:
    def test_path_endpoint_simple(self):
        g = path_graph(3)
        assert is_simple_point(g, "p0")

    def test_c4_vertices_not_simple(self):
        g = cycle_graph(4)
        assert not any(is_simple_point(g, v) for v in g.vertices)

    def test_k4_vertices_simple(self):
        g = complete_graph(4)
        assert all(is_simple_point(g, v) for v in g.vertices)

    def test_triangle_edges_simple(self):
        g = complete_graph(3)
        assert is_simple_edge(g, "k0", "k1")

    def test_c4_edges_not_simple(self):
        g = cycle_graph(4)
        for u, v in g.edges():
            assert not is_simple_edge(g, u, v)

    def test_octahedron_edges_not_simple(self):
        g = octahedron()
        for u, v in g.edges():
            assert not is_simple_edge(g, u, v)


class TestContractible:
    def test_one_point(self):
        assert is_contractible(build_graph(["a"]))

    def test_c4_false(self):
        assert not is_contractible(cycle_graph(4))

    def test_cone_over_c4(self):
        assert is_contractible(wheel(4))

    def test_trace_witness_replays(self):
        g = wheel(6)
        ok, trace = is_contractible(g, return_trace=True)
        assert ok and trace is not None and len(trace) == g.order - 1
        assert apply_trace(g, trace).order == 1

    def test_trace_none_when_not_contractible(self):
        ok, trace = is_contractible(cycle_graph(5), return_trace=True)
        assert not ok and trace is None


class TestApplyTransformation:
    def test_attach_pendant(self):
        g = cycle_graph(4)
        out = apply_transformation(g, AttachPoint("x", frozenset({"c0"})))
        assert out.order == 5 and out.degree("x") == 1

    def test_delete_wheel_hub_rejected(self):
        g = wheel(4)
        with pytest.raises(TransformationError, match="rim is not contractible"):
            apply_transformation(g, DeletePoint("hub"))

    def test_delete_wheel_rim_vertex_accepted(self):
        g = wheel(4)
        out = apply_transformation(g, DeletePoint("c0"))
        assert out.order == 4

    def test_attach_edge_closing_path(self):
        g = path_graph(3, prefix="v")
        out = apply_transformation(g, AttachEdge("v0", "v2"))
        assert canonical_key(out) == canonical_key(complete_graph(3))

    def test_attach_edge_rejected_without_contractible_rim(self):
        g = cycle_graph(4)
        with pytest.raises(TransformationError, match="common-neighbor rim"):
            apply_transformation(g, AttachEdge("c0", "c2"))

    def test_attach_point_empty_rim_rejected(self):
        g = cycle_graph(4)
        with pytest.raises(TransformationError):
            apply_transformation(g, AttachPoint("x", frozenset()))

    def test_delete_edge_rejected_on_c4(self):
        g = cycle_graph(4)
        with pytest.raises(TransformationError, match="edge rim is not contractible"):
            apply_transformation(g, DeleteEdge("c0", "c1"))


class TestTraces:
    def test_round_trip_json(self):
        trace = HomotopyTrace(
            (
                AttachPoint("x", frozenset({"a", "b"})),
                DeleteEdge("a", "b"),
                DeletePoint("x"),
                AttachEdge("a", "b"),
            )
        )
        assert HomotopyTrace.from_obj(trace.to_obj()) == trace

    def test_attach_then_delete_is_identity(self):
        rng = random.Random(21)
        for _ in range(20):
            g = random_contractible_graph(rng, rng.randint(2, 8))
            size = rng.randint(1, min(3, g.order))
            s = frozenset(rng.sample(list(g.vertices), size))
            from digitopo.homotopy import _contractible_masks
            from digitopo.graph import induced_subgraph

            if not _contractible_masks(induced_subgraph(g, s)):
                continue
            trace = HomotopyTrace((AttachPoint("zz", s), DeletePoint("zz")))
            assert canonical_key(apply_trace(g, trace)) == canonical_key(g)

    def test_invert_trace_returns_to_source(self):
        rng = random.Random(33)
        g = random_contractible_graph(rng, 7)
        residue, trace = reduce(g)
        back = invert_trace(g, trace)
        restored = apply_trace(residue, back)
        assert canonical_key(restored) == canonical_key(g)
        assert set(restored.vertices) == set(g.vertices)


class TestReduce:
    def test_tree_reduces_to_point(self):
        g = build_graph(
            ["a", "b", "c", "d", "e"], [("a", "b"), ("b", "c"), ("b", "d"), ("d", "e")]
        )
        residue, trace = reduce(g)
        assert residue.order == 1 and len(trace) == 4

    def test_c4_irreducible(self):
        residue, trace = reduce(cycle_graph(4))
        assert residue.order == 4 and len(trace) == 0

    def test_octahedron_irreducible(self):
        residue, trace = reduce(octahedron())
        assert residue.order == 6

    def test_deterministic_greedy_order(self):
        g = build_graph(
            ["b", "a", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")]
        )
        _, trace = reduce(g)
        # both endpoints have degree 1; label order picks 'a' first
        assert trace.steps[0] == DeletePoint("a")

    def test_trace_replays_to_residue(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_graph(rng, rng.randint(1, 10), rng.random())
            residue, trace = reduce(g)
            replayed = apply_trace(g, trace)
            assert canonical_key(replayed) == canonical_key(residue)
            assert not any(is_simple_point(residue, v) for v in residue.vertices)


class TestInvariancePreservation:
    def test_accepted_steps_preserve_invariants(self):
        from digitopo.invariants import euler_characteristic, homology, same_profile

        rng = random.Random(77)
        total = 0
        for base in range(8):
            g = random_graph(rng, rng.randint(5, 10), 0.4, prefix=f"g{base}_")
            for step, before, after in random_accepted_steps(rng, g, 6):
                assert euler_characteristic(before) == euler_characteristic(after), step
                assert same_profile(homology(before), homology(after)), step
                total += 1
        assert total >= 30


class TestHomotopyEquivalent:
    def test_identity_case(self):
        g = cycle_graph(4)
        h = build_graph(["w", "x", "y", "z"], [("w", "x"), ("x", "y"), ("y", "z"), ("z", "w")])
        verdict = homotopy_equivalent(g, h)
        assert verdict.status == "Equivalent"

    def test_c4_vs_point_distinguished(self):
        verdict = homotopy_equivalent(cycle_graph(4), build_graph(["a"]))
        assert verdict.status == "Distinguished"
        assert verdict.invariant == "euler"
        assert verdict.values == (0, 1)

    def test_cycles_of_different_length_connect(self):
        verdict = homotopy_equivalent(cycle_graph(5), cycle_graph(9))
        assert verdict.status == "Equivalent"
        ta, tb = verdict.traces
        ra = apply_trace(cycle_graph(5), ta)
        rb = apply_trace(cycle_graph(9), tb)
        assert canonical_key(ra) == canonical_key(rb)

    def test_sphere_vs_torus_distinguished(self):
        from digitopo.catalog import get

        verdict = homotopy_equivalent(octahedron(), get("torus16").graph)
        assert verdict.status == "Distinguished"

    def test_torus_vs_klein_distinguished_by_first_betti(self):
        from digitopo.catalog import get

        verdict = homotopy_equivalent(get("torus16").graph, get("klein16").graph)
        assert verdict.status == "Distinguished"
        assert verdict.invariant == "betti_q[1]"
        assert verdict.values == (2, 1)

    def test_reduce_traces_bit_identical(self):
        rng = random.Random(61)
        for _ in range(10):
            g = random_graph(rng, 12, 0.35)
            _, t1 = reduce(g)
            _, t2 = reduce(g)
            assert t1 == t2

    def test_witness_never_fabricated(self):
        # Unknown is acceptable; Equivalent must always replay
        rng = random.Random(3)
        for _ in range(10):
            g = random_graph(rng, 7, 0.4)
            h = random_graph(rng, 7, 0.4, prefix="u")
            verdict = homotopy_equivalent(g, h, budget=60)
            if verdict.status == "Equivalent":
                ta, tb = verdict.traces
                assert canonical_key(apply_trace(g, ta)) == canonical_key(apply_trace(h, tb))
