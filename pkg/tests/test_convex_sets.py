import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from sweep_vel import (AffineSubspace, Ball, Box, ConvexSet, DykstraNoConverge, Halfspace, Hyperplane, Intersection,
                       InvariantViolation, MovingSet, ProjectionConfig, Singleton, TimeFunction, UnsupportedFamily,
                       WholeSpace, box_hausdorff_distance, translation_distance)

CLOSED_FORM_SETS = [
    Ball([0.5, -0.5], 1.0),
    Box([-1.0, 0.0], [1.0, 2.0]),
    Halfspace([1.0, 2.0], 0.5),
    Hyperplane([0.0, 3.0], 1.0),
    AffineSubspace([1.0, 1.0], [[1.0, 0.0]]),
    Singleton([0.3, 0.4]),
    WholeSpace(2),
]


class TestProject:

    def test_box_clamps(self):
        assert_array_equal(Box([-1.0, -1.0], [1.0, 1.0]).project([2.0, 0.5]), [1.0, 0.5])

    def test_ball_scales(self):
        assert_allclose(Ball([0.0, 0.0], 1.0).project([3.0, 4.0]), [0.6, 0.8])

    def test_halfspace(self):
        assert_allclose(Halfspace([1.0, 0.0], 0.0).project([2.0, 3.0]), [0.0, 3.0])
        assert_allclose(Halfspace([1.0, 0.0], 0.0).project([-2.0, 3.0]), [-2.0, 3.0])

    def test_affine_line(self):
        assert_allclose(AffineSubspace([0.0, 0.0], [[1.0, 0.0]]).project([5.0, 2.0]), [5.0, 0.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            Ball([0.0, 0.0], 1.0).project([1.0, 2.0, 3.0])

    @pytest.mark.parametrize("feasible", CLOSED_FORM_SETS, ids=lambda s: s.variant.value)
    def test_firmly_nonexpansive_and_idempotent(self, feasible: ConvexSet, rng):
        xs = 3.0 * rng.standard_normal((1000, 2))
        ys = 3.0 * rng.standard_normal((1000, 2))
        for x, y in zip(xs, ys):
            px, py = feasible.project(x), feasible.project(y)
            assert float(np.dot(px - py, px - py)) <= float(np.dot(px - py, x - y)) + 1e-12
            assert_allclose(feasible.project(px), px, atol=1e-12)


class TestDykstra:

    @staticmethod
    def _grid_oracle(x: np.ndarray, pitch: float) -> float:
        axis = np.arange(-1.0, 1.0 + pitch / 2, pitch)
        grid = np.stack(np.meshgrid(axis, axis), axis=-1).reshape(-1, 2)
        feasible = grid[np.linalg.norm(grid, axis=1) <= 1.2]
        return float(np.min(np.linalg.norm(feasible - x, axis=1)))

    def test_box_ball_corner(self):
        feasible = Intersection([Box([-1.0, -1.0], [1.0, 1.0]), Ball([0.0, 0.0], 1.2)], [0.0, 0.0])
        p = feasible.project(np.array([2.0, 2.0]))
        assert_allclose(p, [1.2 / np.sqrt(2.0)] * 2, atol=1e-8)

    def test_box_ball_against_grid_search(self, rng):
        pitch = 0.01
        feasible = Intersection([Box([-1.0, -1.0], [1.0, 1.0]), Ball([0.0, 0.0], 1.2)], [0.0, 0.0])
        for x in rng.uniform(-3.0, 3.0, size=(50, 2)):
            p = feasible.project(x)
            assert feasible.contains(p, 1e-8)
            distance, oracle = float(np.linalg.norm(x - p)), self._grid_oracle(x, pitch)
            assert distance <= oracle + 1e-9
            assert oracle - distance <= pitch

    def test_stalled_iterate_keeps_sweeping(self, rng):
        x = np.array([3.0, 2.0])
        feasible = Intersection([Box([-1.0, -1.0], [1.0, 1.0]), Ball([0.0, 0.0], 1.2)], [0.0, 0.0])
        p = feasible.project(x)
        assert_allclose(p, 1.2 * x / np.linalg.norm(x), atol=1e-6)
        arc = np.stack([np.ones(50), np.linspace(-0.66, 0.66, 50)], axis=1)
        for z in np.concatenate([arc, rng.uniform(-0.8, 0.8, size=(200, 2))]):
            assert float(np.dot(x - p, z - p)) <= 1e-6

    def test_budget_exhausted(self):
        feasible = Intersection([Ball([0.0, 0.0], 1.0), Halfspace([1.0, 1.0], -1.0)], [-0.6, -0.6])
        with pytest.raises(DykstraNoConverge):
            feasible.project(np.array([3.0, 3.0]), ProjectionConfig(tol=1e-15, max_iter=2))

    def test_witness_must_belong(self):
        with pytest.raises(InvariantViolation, match="witness"):
            Intersection([Ball([0.0, 0.0], 1.0), Box([2.0, 2.0], [3.0, 3.0])], [0.0, 0.0])


class TestContains:

    def test_cases(self):
        assert Ball([0.0, 0.0], 1.0).contains([0.0, 0.0], 1e-9)
        assert not Box([0.0, 0.0], [1.0, 1.0]).contains([1.5, 0.0], 1e-9)
        assert Halfspace([1.0, 0.0], 0.0).contains([-1e-12, 7.0], 1e-9)

    @pytest.mark.parametrize("lam, t", [(-2.0, 0.5), (0.0, 1.0), (3.0, 0.25)])
    def test_normal_cone_of_line(self, lam, t):
        line = AffineSubspace([0.0, 0.0], [[1.0, 0.0]])
        assert line.normal_cone_contains([lam, 0.0], [0.0, -t], 1e-9)

    def test_normal_cone_at_interior_point(self):
        assert Ball([0.0, 0.0], 1.0).normal_cone_contains([0.2, 0.1], [0.0, 0.0], 1e-12)

    def test_normal_cone_at_box_vertex(self):
        box = Box([0.0, 0.0], [1.0, 1.0])
        assert box.normal_cone_contains([1.0, 1.0], [1.0, 2.0], 1e-12)
        assert not box.normal_cone_contains([1.0, 1.0], [-1.0, 2.0], 1e-12)

    @pytest.mark.parametrize("feasible", CLOSED_FORM_SETS, ids=lambda s: s.variant.value)
    def test_normal_cone_is_a_cone(self, feasible: ConvexSet, rng):
        for y in 3.0 * rng.standard_normal((200, 2)):
            p = feasible.project(y)
            n = y - p
            r = rng.standard_normal(2)
            for w in (n, -n, r / np.linalg.norm(r)):
                base = feasible.normal_cone_contains(p, w, 1e-9)
                assert all(feasible.normal_cone_contains(p, scale * w, 1e-9) == base for scale in (0.5, 2.0, 7.0))
            assert feasible.normal_cone_contains(p, n, 1e-9)


class TestNormBound:

    def test_bounded_variants(self):
        assert Singleton([3.0, 4.0]).norm_bound() == pytest.approx(5.0)
        assert Ball([3.0, 4.0], 1.0).norm_bound() == pytest.approx(6.0)
        assert Box([-3.0, 0.0], [1.0, 4.0]).norm_bound() == pytest.approx(5.0)

    def test_unbounded_variants(self):
        assert Halfspace([1.0, 0.0], 0.0).norm_bound() is None
        assert AffineSubspace([0.0, 0.0], [[1.0, 0.0]]).norm_bound() is None
        assert not WholeSpace(2).is_bounded

    def test_intersection_takes_smallest(self):
        feasible = Intersection([Ball([0.0, 0.0], 2.0), Box([-1.0, -1.0], [1.0, 1.0]), Halfspace([1.0, 0.0], 0.0)],
                                [0.0, 0.0])
        assert feasible.norm_bound() == pytest.approx(np.sqrt(2.0))


class TestMovingSet:

    def test_static(self):
        ball = Ball([0.0, 0.0], 1.0)
        assert MovingSet.static(ball).at(0.7) is ball

    def test_translate(self):
        moving = MovingSet.translate(Box([0.0, 0.0], [1.0, 1.0]), TimeFunction.polynomial([[0.0, 0.0], [1.0, 0.0]]))
        box = moving.at(0.5)
        assert_allclose(box.lo, [0.5, 0.0])
        assert_allclose(box.hi, [1.5, 1.0])

    def test_static_distance_is_zero(self):
        moving = MovingSet.static(AffineSubspace([0.0, 0.0], [[1.0, 0.0]]))
        assert moving.hausdorff_distance(0.1, 0.9) == 0.0

    def test_ball_path_distance_and_sampled_oracle(self):
        moving = MovingSet.ball_path(TimeFunction.zero(2), TimeFunction.polynomial([1.0, 1.0]), horizon=1.0)
        assert moving.hausdorff_distance(0.0, 0.5) == pytest.approx(0.5)
        angles = np.linspace(0.0, 2.0 * np.pi, 721)
        boundary = 1.5 * np.column_stack([np.cos(angles), np.sin(angles)])
        sampled = max(moving.at(0.0).distance(point) for point in boundary)
        assert sampled == pytest.approx(0.5, abs=1e-9)

    def test_box_path_exact_distance(self):
        moving = MovingSet.box_path(TimeFunction.constant([0.0, 0.0]),
                                    TimeFunction.polynomial([[1.0, 1.0], [1.0, 2.0]]))
        assert moving.hausdorff_distance(0.0, 1.0) == pytest.approx(np.sqrt(5.0))
        assert box_hausdorff_distance(moving.at(0.0), moving.at(1.0)) == pytest.approx(np.sqrt(5.0))

    def test_diagonal_box_shift_exceeds_corner_movement(self):
        first, second = Box([0.0, 0.0], [1.0, 1.0]), Box([1.0, 1.0], [2.0, 2.0])
        corner_movement = float(np.max(np.abs(np.concatenate([first.lo - second.lo, first.hi - second.hi]))))
        assert corner_movement == pytest.approx(1.0)
        assert box_hausdorff_distance(first, second) == pytest.approx(np.sqrt(2.0))
        assert box_hausdorff_distance(second, first) == pytest.approx(np.sqrt(2.0))
        far_corner = np.array([0.0, 0.0])
        assert second.distance(far_corner) == pytest.approx(np.sqrt(2.0))

    def test_translate_of_unbounded_bases(self):
        assert translation_distance(Halfspace([3.0, 4.0], 0.0), [1.0, 1.0]) == pytest.approx(7.0 / 5.0)
        assert translation_distance(AffineSubspace([0.0, 0.0], [[1.0, 0.0]]), [5.0, 2.0]) == pytest.approx(2.0)
        assert translation_distance(WholeSpace(2), [5.0, 2.0]) == 0.0

    def test_translate_of_unbounded_intersection_unsupported(self):
        feasible = Intersection([Halfspace([1.0, 0.0], 0.0), Halfspace([0.0, 1.0], 0.0)], [0.0, 0.0])
        with pytest.raises(UnsupportedFamily):
            translation_distance(feasible, [1.0, 0.0])

    def test_continuity_modulus_audit(self):
        path = TimeFunction.polynomial([[0.0, 0.0], [2.0, 0.0]])
        base = Ball([0.0, 0.0], 1.0)
        good = MovingSet.translate(base, path, modulus=TimeFunction.polynomial([0.0, 2.0]), horizon=1.0)
        bad = MovingSet.translate(base, path, modulus=TimeFunction.polynomial([0.0, 1.0]), horizon=1.0)
        assert good.satisfies_modulus(samples=21)
        assert bad.audit_continuity_modulus(samples=21) == pytest.approx(1.0)

    def test_time_outside_horizon(self):
        moving = MovingSet.static(Ball([0.0, 0.0], 1.0), horizon=1.0)
        with pytest.raises(ValueError, match="outside"):
            moving.at(1.5)

    def test_dict_form_rebuilds(self):
        moving = MovingSet.translate(Halfspace([1.0, 0.0], 1.0), TimeFunction.polynomial([[0.0, 0.0], [0.0, 0.5]]),
                                     modulus=TimeFunction.polynomial([0.0, 0.0]), lipschitz_beta=0.5)
        rebuilt = MovingSet.from_dict(moving.to_dict(), dim=2)
        assert rebuilt.family is moving.family
        assert rebuilt.lipschitz_beta == 0.5
        assert_allclose(rebuilt.at(0.4).project([3.0, 1.0]), moving.at(0.4).project([3.0, 1.0]))
