"""Cubical models, intersection graphs, and the digitize-reduce pipeline."""

from fractions import Fraction

import pytest

from digitopo.covers import BoxCell
from digitopo.digitizer import (
    CubicalModel,
    ShapeError,
    ShapeSpec,
    cubical_model,
    digitize_reduce,
    eval_expr,
    load_shape,
    mask_csv,
    mask_pgm,
    model_graph,
    parse_expr,
    shape_annulus,
    shape_circle,
    shape_disk,
    shape_segment,
    shape_sphere,
)
from digitopo.homotopy import homotopy_equivalent
from digitopo.invariants import same_profile


WINDOW2 = BoxCell.make([-2, -2], [2, 2])
WINDOW3 = BoxCell.make([-2, -2, -2], [2, 2, 2])


class TestExpressions:
    def test_parse_and_eval(self):
        e = parse_expr(["-", ["+", ["square", "x"], ["square", "y"]], 1])
        assert eval_expr(e, (Fraction(1), Fraction(0))) == 0
        assert eval_expr(e, (Fraction(1, 2), Fraction(0))) == Fraction(-3, 4)

    def test_all_operations(self):
        e = parse_expr(["max", ["min", "x", "y"], ["abs", ["-", "x"]], ["*", "x", "y", 2]])
        assert eval_expr(e, (Fraction(-1), Fraction(3))) == 1

    def test_bad_op_rejected(self):
        with pytest.raises(ShapeError, match="unknown operation"):
            parse_expr(["pow", "x", 2])

    def test_rational_strings(self):
        e = parse_expr(["-", "x", "1/3"])
        assert eval_expr(e, (Fraction(1),)) == Fraction(2, 3)


class TestCubicalModel:
    def test_segment_run_of_cubes(self):
        model = cubical_model(shape_segment(), BoxCell.make([-1], [2]), "1/2")
        assert model.cubes == {(-1,), (0,), (1,), (2,)}
        # the closed segment [0,1] touches cube -1 at 0 and cube 2 at 1

    def test_circle_ring_excludes_origin(self):
        model = cubical_model(shape_circle(), WINDOW2, "1/2")
        center = {(0, 0), (-1, 0), (0, -1), (-1, -1)}
        assert not (model.cubes & center)
        assert len(model.cubes) == 20

    def test_disk_includes_origin(self):
        model = cubical_model(shape_disk(), WINDOW2, "1/2")
        assert {(0, 0), (-1, 0), (0, -1), (-1, -1)} <= model.cubes

    def test_empty_result_reported(self):
        far = ShapeSpec("curve", points=((Fraction(50),), (Fraction(51),)))
        model = cubical_model(far, BoxCell.make([0], [1]), "1/2")
        assert len(model.cubes) == 0
        with pytest.raises(ShapeError, match="misses the window"):
            digitize_reduce(far, BoxCell.make([0], [1]), "1/2")

    def test_pitch_must_be_positive(self):
        with pytest.raises(ShapeError):
            cubical_model(shape_segment(), BoxCell.make([0], [1]), 0)


class TestModelGraph:
    def test_face_and_corner_adjacency(self):
        m = CubicalModel(Fraction(1), 2, frozenset({(0, 0), (1, 0), (1, 1)}))
        g = model_graph(m)
        assert g.size == 3  # all pairs within Chebyshev distance 1

    def test_2x2_block_is_k4(self):
        m = CubicalModel(Fraction(1), 2, frozenset({(0, 0), (1, 0), (0, 1), (1, 1)}))
        g = model_graph(m)
        assert g.order == 4 and g.size == 6

    def test_degree_bound(self):
        model = cubical_model(shape_disk(), WINDOW2, "1/2")
        g = model_graph(model)
        assert all(g.degree(v) <= 3**2 - 1 for v in g.vertices)
        model3 = cubical_model(shape_sphere(), WINDOW3, "1/2")
        g3 = model_graph(model3)
        assert all(g3.degree(v) <= 3**3 - 1 for v in g3.vertices)


class TestPipeline:
    def test_segment_reduces_to_point(self):
        rep = digitize_reduce(shape_segment(), BoxCell.make([-1], [2]), "1/2")
        assert rep.residue.order == 1
        assert rep.euler == 1

    def test_disk_reduces_to_point(self):
        rep = digitize_reduce(shape_disk(), WINDOW2, "1/2")
        assert rep.residue.order == 1
        assert rep.euler == 1 and rep.profile.betti_q == (1,)

    def test_circle_reduces_to_cycle(self):
        rep = digitize_reduce(shape_circle(), WINDOW2, "1/2")
        assert rep.euler == 0
        assert rep.profile.betti_q == (1, 1)
        assert rep.residue.order >= 4
        assert all(rep.residue.degree(v) == 2 for v in rep.residue.vertices)

    def test_circle_pitches_equivalent(self):
        half = digitize_reduce(shape_circle(), WINDOW2, "1/2")
        quarter = digitize_reduce(shape_circle(), WINDOW2, "1/4")
        verdict = homotopy_equivalent(half.graph, quarter.graph)
        assert verdict.status == "Equivalent"

    def test_sphere_invariants(self):
        rep = digitize_reduce(shape_sphere(), WINDOW3, "1/2")
        assert rep.euler == 2
        assert tuple(rep.profile.betti_q[:3]) == (1, 0, 1)
        assert all(b == 0 for b in rep.profile.betti_q[3:])

    def test_annulus_keeps_circle_type(self):
        rep = digitize_reduce(shape_annulus("3/4", "5/4"), WINDOW2, "1/4")
        assert rep.euler == 0
        assert rep.profile.betti_q == (1, 1)

    def test_convex_regions_reduce_to_a_point(self):
        ellipse = ShapeSpec(
            "region",
            expr=parse_expr(["-", ["+", ["*", "x", "x", "1/4"], ["square", "y"]], 1]),
        )
        for shape, window, pitch in [
            (shape_disk(), WINDOW2, "1/2"),
            (shape_disk(), WINDOW2, "1/4"),
            (ellipse, BoxCell.make([-3, -2], [3, 2]), "1/2"),
        ]:
            rep = digitize_reduce(shape, window, pitch)
            assert rep.residue.order == 1

    def test_resolution_stability_bundled_suite(self):
        # hole and ring widths stay above the coarser sample grid
        cases = [
            (shape_segment(), BoxCell.make([-1], [2])),
            (shape_disk(), WINDOW2),
            (shape_circle(), WINDOW2),
            (shape_annulus("3/4", "3/2"), WINDOW2),
        ]
        for shape, window in cases:
            a = digitize_reduce(shape, window, "1/2")
            b = digitize_reduce(shape, window, "1/4")
            verdict = homotopy_equivalent(a.graph, b.graph)
            assert (
                verdict.status == "Equivalent"
                or (a.euler == b.euler and same_profile(a.profile, b.profile))
            ), shape.kind

    def test_resolution_stability_sphere(self):
        a = digitize_reduce(shape_sphere(), WINDOW3, "1/2")
        b = digitize_reduce(
            shape_sphere(), BoxCell.make(["-3/2"] * 3, ["3/2"] * 3), "1/4"
        )
        assert a.euler == b.euler == 2
        assert same_profile(a.profile, b.profile)

    def test_report_object(self):
        rep = digitize_reduce(shape_segment(), BoxCell.make([-1], [2]), "1/2")
        obj = rep.to_obj()
        assert obj["euler"] == 1 and obj["cubes"] == 4
        assert obj["residue"]["vertices"]


class TestShapeIo:
    def test_load_shape_file(self):
        text = """
        {"kind": "hypersurface",
         "expr": ["-", ["+", ["square","x"], ["square","y"]], 1],
         "window": {"lo": [-2,-2], "hi": [2,2]},
         "pitch": "1/2"}
        """
        shape, window, pitch = load_shape(text)
        assert shape.kind == "hypersurface"
        assert window.lo == (-2, -2) and pitch == Fraction(1, 2)

    def test_mask_dumps(self):
        model = cubical_model(shape_circle(), WINDOW2, "1/2")
        csv = mask_csv(model)
        assert csv.count("\n") == 6 and set(csv) <= set("01,\n")
        pgm = mask_pgm(model)
        assert pgm.startswith("P2\n6 6\n1\n")

    def test_mask_requires_2d(self):
        model = cubical_model(shape_segment(), BoxCell.make([0], [1]), "1/2")
        with pytest.raises(ShapeError):
            mask_csv(model)
