"""Sphere, manifold, surface and disk recognizers."""

import pytest

from conftest import complete_graph, cycle_graph, octahedron, path_graph, wheel
from digitopo.classify import (
    ClassificationVerdict,
    classify,
    is_n_disk,
    is_n_manifold,
    is_n_sphere,
    minimal_sphere,
    surface_dimension,
)
from digitopo.graph import GraphError, build_graph, canonical_key, induced_subgraph, join, rim
from digitopo.homotopy import is_contractible


class TestSurfaceDimension:
    def test_two_points(self):
        assert surface_dimension(build_graph(["a", "b"])) == 0

    def test_cycles_are_one_surfaces(self):
        for k in (4, 5, 6, 9):
            assert surface_dimension(cycle_graph(k)) == 1

    def test_triangle_is_not_a_surface(self):
        assert surface_dimension(complete_graph(3)) is None

    def test_point_is_not_a_surface(self):
        assert surface_dimension(build_graph(["a"])) is None

    def test_octahedron(self):
        assert surface_dimension(octahedron()) == 2


class TestSpheres:
    def test_c4_is_1_sphere(self):
        v = is_n_sphere(cycle_graph(4), 1)
        assert v.kind == "Sphere" and v.dimension == 1 and v.failing_witness is None

    def test_c3_is_not_a_sphere(self):
        v = is_n_sphere(complete_graph(3), 1)
        assert v.kind == "None" and v.failing_witness is not None

    def test_octahedron_is_2_sphere(self):
        assert is_n_sphere(octahedron(), 2).ok

    def test_eight_vertex_join_is_3_sphere(self):
        s0 = build_graph(["a", "b"])
        g = join(join(s0, build_graph(["c", "d"])), join(build_graph(["e", "f"]), build_graph(["g", "h"])))
        assert g.order == 8
        assert is_n_sphere(g, 3).ok

    def test_wrong_dimension_rejected(self):
        assert not is_n_sphere(cycle_graph(4), 2).ok
        assert not is_n_sphere(octahedron(), 1).ok

    def test_verdict_witness_discipline(self):
        good = is_n_sphere(cycle_graph(4), 1)
        bad = is_n_sphere(path_graph(4), 1)
        assert good.failing_witness is None
        assert bad.kind == "None" and bad.failing_witness is not None

    def test_heuristic_flag_single_deletion(self):
        # the heuristic samples one vertex; on honest spheres it agrees
        assert is_n_sphere(octahedron(), 2, check_all_deletions=False).ok

    def test_negative_dimension_rejected(self):
        with pytest.raises(GraphError):
            is_n_sphere(cycle_graph(4), -1)


class TestManifolds:
    def test_octahedron(self):
        assert is_n_manifold(octahedron(), 2).ok

    def test_torus16(self):
        from digitopo.catalog import get

        assert is_n_manifold(get("torus16").graph, 2).ok

    def test_wheel_w5_fails_with_rim_vertex_witness(self):
        g = wheel(5)
        v = is_n_manifold(g, 2)
        assert v.kind == "None"
        # the hub's rim is a 5-cycle (a valid 1-sphere); the failures are the
        # cycle vertices, whose rims are paths
        assert v.failing_witness in {f"c{i}" for i in range(5)}

    def test_sphere_implies_manifold_implies_surface(self):
        graphs = [cycle_graph(4), cycle_graph(6), octahedron(), minimal_sphere(3)]
        for g in graphs:
            d = surface_dimension(g)
            assert d is not None
            if is_n_sphere(g, d).ok:
                assert is_n_manifold(g, d).ok
                assert surface_dimension(g) == d


class TestDisks:
    def test_path_with_endpoints(self):
        assert is_n_disk(path_graph(3), ["p0", "p2"], 1)

    def test_point_with_empty_boundary_dim0(self):
        assert not is_n_disk(build_graph(["a"]), [], 0)

    def test_octahedron_minus_vertex(self):
        g = octahedron()
        v = g.vertices[0]
        boundary = rim(g, v).vertices
        rest = induced_subgraph(g, [w for w in g.vertices if w != v])
        assert is_n_disk(rest, boundary, 2)

    def test_boundary_must_be_subset(self):
        with pytest.raises(GraphError):
            is_n_disk(path_graph(3), ["nope"], 1)

    def test_wrong_boundary_fails(self):
        assert not is_n_disk(path_graph(3), ["p0", "p1"], 1)


class TestMinimalSphere:
    def test_sizes(self):
        for n in range(5):
            g = minimal_sphere(n)
            assert g.order == 2 * n + 2
            assert g.size == (2 * n + 2) * n  # 2n-regular on 2n+2 vertices

    def test_zero_sphere(self):
        g = minimal_sphere(0)
        assert g.order == 2 and g.size == 0

    def test_one_sphere_is_c4(self):
        assert canonical_key(minimal_sphere(1)) == canonical_key(cycle_graph(4))

    def test_recognized_up_to_three(self):
        for n in range(4):
            assert is_n_sphere(minimal_sphere(n), n).ok

    def test_rims_are_smaller_minimal_spheres(self):
        for n in range(1, 4):
            g = minimal_sphere(n)
            want = canonical_key(minimal_sphere(n - 1))
            for v in g.vertices:
                assert canonical_key(rim(g, v)) == want

    def test_join_law_small(self):
        for a in range(3):
            for b in range(3):
                if a + b + 1 <= 3:
                    g = join(minimal_sphere(a), minimal_sphere(b))
                    assert is_n_sphere(g, a + b + 1).ok, (a, b)

    def test_minus_vertex_contractible_and_disklike(self):
        for n in range(1, 4):
            g = minimal_sphere(n)
            for v in g.vertices:
                rest = induced_subgraph(g, [w for w in g.vertices if w != v])
                assert is_contractible(rest)
                assert is_n_disk(rest, rim(g, v).vertices, n)


class TestManifoldMinusContractible:
    def test_deleting_contractible_pieces_matches_deleting_a_point(self):
        """On a manifold, removing any contractible induced subgraph leaves
        the same Euler characteristic and Betti numbers as removing one
        vertex."""
        import random

        from digitopo.catalog import get
        from digitopo.invariants import euler_characteristic, homology, same_profile

        rng = random.Random(55)
        for name in ("torus16", "klein16"):
            m = get(name).graph
            v = sorted(m.vertices)[0]
            m_minus_v = induced_subgraph(m, [w for w in m.vertices if w != v])
            eu = euler_characteristic(m_minus_v)
            prof = homology(m_minus_v)
            found = 0
            while found < 4:
                size = rng.randint(2, 4)
                seed = rng.choice(m.vertices)
                pool = [seed]
                while len(pool) < size:
                    nxt = rng.choice(m.neighbors(rng.choice(pool)))
                    if nxt not in pool:
                        pool.append(nxt)
                h = induced_subgraph(m, pool)
                if not is_contractible(h):
                    continue
                found += 1
                m_minus_h = induced_subgraph(m, [w for w in m.vertices if w not in set(pool)])
                assert euler_characteristic(m_minus_h) == eu, (name, pool)
                assert same_profile(homology(m_minus_h), prof), (name, pool)


class TestClassify:
    def test_probing(self):
        assert classify(cycle_graph(5)).kind == "Sphere"
        assert classify(octahedron()).kind == "Sphere"
        assert classify(complete_graph(3)).kind == "None"

    def test_manifold_not_sphere(self):
        from digitopo.catalog import get

        v = classify(get("torus16").graph)
        assert v.kind == "Manifold" and v.dimension == 2

    def test_verdict_serialization(self):
        v = ClassificationVerdict("Sphere", 2, None)
        assert v.to_obj() == {"kind": "Sphere", "dimension": 2, "witness": None}
