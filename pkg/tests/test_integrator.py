import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from sweep_vel import (InvariantViolation, MovingSet, NoConverge, ProblemSpec, Singleton, SymmetricOperator,
                       TimeFunction, Trajectory, VISolveConfig, WholeSpace, c0_distance, c0_norm, certify, node_error,
                       solve, w11_distance, w11_norm)


def _line_member(lam: float, steps: int = 10, vertical: float = 0.0) -> Trajectory:
    return Trajectory.from_velocities([0.0, 0.0], 1.0, np.tile([lam, vertical], (steps, 1)))


class TestSolve:

    def test_degenerate_line_instance_stays_at_rest(self, line_problem):
        spec = line_problem()
        trajectory = solve(spec, 100)
        assert_allclose(trajectory.states, np.zeros((101, 2)), atol=1e-12)
        assert trajectory.max_residual <= 1e-10
        assert certify(spec, trajectory, 1e-9).is_solution

    def test_clamp_first_order_convergence(self, bundled):
        spec = bundled("clamp1d").problem
        errors = []
        for steps in (500, 1000, 2000):
            error = node_error(solve(spec, steps), spec.reference)
            assert error <= 2.0 * spec.T / steps
            errors.append(error)
        for coarse, fine in zip(errors, errors[1:]):
            assert 1.5 <= coarse / fine <= 2.5

    def test_singleton_velocity_set(self):
        spec = ProblemSpec(A0=SymmetricOperator.identity(2), A1=SymmetricOperator.identity(2),
                           f=TimeFunction.constant([5.0, -3.0]), C=MovingSet.static(Singleton([1.0, 0.0])),
                           u0=[1.0, 0.0], T=1.0)
        trajectory = solve(spec, 20)
        assert_allclose(trajectory.velocities, np.tile([1.0, 0.0], (20, 1)))
        assert_allclose(trajectory.states[:, 0], 1.0 + trajectory.times)
        assert_allclose(trajectory.states[:, 1], 0.0)

    def test_warm_start_does_not_change_the_solution(self, bundled):
        spec = bundled("a1coercive").problem
        warm = solve(spec, 200, VISolveConfig(warm_start=True))
        cold = solve(spec, 200, VISolveConfig(warm_start=False))
        assert c0_distance(warm, cold) <= 1e-9

    def test_step_failure_carries_index(self, bundled):
        with pytest.raises(NoConverge) as failure:
            solve(bundled("clamp1d").problem, 100, VISolveConfig(max_iter=1))
        assert failure.value.step_index == 1

    def test_rejects_zero_steps(self, line_problem):
        with pytest.raises(ValueError, match="steps"):
            solve(line_problem(), 0)


class TestCertify:

    @pytest.mark.parametrize("lam", [-2.0, 0.0, 3.0])
    def test_family_member_certifies(self, line_problem, lam):
        certificate = certify(line_problem(), _line_member(lam), 1e-9)
        assert certificate.is_solution
        assert certificate.max_residual <= 1e-12

    def test_tampered_velocity_fails(self, line_problem):
        certificate = certify(line_problem(), _line_member(3.0, vertical=1.0), 1e-9)
        assert not certificate.is_solution
        assert certificate.failed_step == 1

    def test_wrong_initial_value_fails(self, line_problem):
        certificate = certify(line_problem(u0=[1.0, 0.0]), _line_member(0.0), 1e-9)
        assert certificate.failed_step == 0

    def test_grid_must_match_problem(self, line_problem):
        with pytest.raises(ValueError, match="does not match"):
            certify(line_problem(horizon=2.0), _line_member(0.0), 1e-9)

    def test_normal_uses_the_updated_state(self):
        spec = ProblemSpec(A0=SymmetricOperator.identity(2, 2.0), A1=SymmetricOperator.identity(2),
                           f=TimeFunction.constant([4.0, -2.0]), C=MovingSet.static(WholeSpace(2)), u0=[0.0, 0.0],
                           T=1.0)
        trajectory = solve(spec, 10)
        assert certify(spec, trajectory, 1e-9).max_residual <= 1e-9
        for k in range(1, trajectory.steps + 1):
            v = trajectory.velocities[k - 1]
            lagged = -(spec.A1.apply(v) + spec.A0.apply(trajectory.states[k - 1]) - spec.f(trajectory.times[k]))
            assert np.linalg.norm(lagged) == pytest.approx(2.0 * trajectory.h * np.linalg.norm(v), rel=1e-6)

    def test_lagged_state_velocities_fail(self):
        spec = ProblemSpec(A0=SymmetricOperator.identity(2, 2.0), A1=SymmetricOperator.identity(2),
                           f=TimeFunction.constant([4.0, -2.0]), C=MovingSet.static(WholeSpace(2)), u0=[0.0, 0.0],
                           T=1.0)
        u, velocities = np.zeros(2), []
        for _ in range(10):
            v = spec.f(0.0) - 2.0 * u
            velocities.append(v)
            u = u + 0.1 * v
        certificate = certify(spec, Trajectory.from_velocities([0.0, 0.0], 1.0, velocities), 1e-9)
        assert not certificate.is_solution
        assert certificate.failed_step == 1


class TestClosedness:

    def test_line_members_converge_to_a_member(self, line_problem):
        spec, limit = line_problem(), _line_member(1.0, steps=100)
        for n in (1, 10, 100, 1000):
            member = _line_member(1.0 + 1.0 / n, steps=100)
            assert certify(spec, member, 1e-10).is_solution
            assert w11_distance(member, limit) == pytest.approx(1.5 / n)
        assert certify(spec, limit, 1e-10).is_solution

    def test_solutions_under_converging_forcing(self, ball_problem):
        limit_spec = ball_problem([[1.0, 0.0], [0.0, 2.0]], [[1.0, 0.0], [0.0, 1.0]],
                                  f=TimeFunction.polynomial([[0.5, 0.0], [1.0, 1.0]]))
        limit = solve(limit_spec, 50)
        distances = []
        for n in (1, 10, 100, 1000):
            spec = limit_spec.replace(f=TimeFunction.polynomial([[0.5 + 1.0 / n, 0.0], [1.0, 1.0]]))
            member = solve(spec, 50)
            assert certify(spec, member, 1e-9).is_solution
            distances.append(w11_distance(member, limit))
        assert distances[-1] <= distances[0] / 50.0
        assert distances[-1] <= 5e-3
        assert certify(limit_spec, limit, 1e-9).is_solution


class TestNorms:

    def test_linear_member(self):
        member = _line_member(2.0)
        assert c0_norm(member) == pytest.approx(2.0)
        assert w11_norm(member) == pytest.approx(3.0)

    def test_scalar_ramp(self):
        ramp = Trajectory.from_velocities([0.0], 1.0, np.ones((50, 1)))
        assert w11_norm(ramp) == pytest.approx(1.5)

    def test_distances(self):
        assert c0_distance(_line_member(3.0), _line_member(-2.0)) == pytest.approx(5.0)
        assert w11_distance(_line_member(3.0), _line_member(-2.0)) == pytest.approx(7.5)

    def test_grid_mismatch(self):
        with pytest.raises(ValueError, match="grid mismatch"):
            c0_distance(_line_member(1.0, steps=10), _line_member(1.0, steps=20))


class TestTrajectory:

    def test_shift_and_blend(self):
        base = _line_member(0.0)
        shifted = base.shift_along([1.0, 0.0], 3.0)
        assert_allclose(shifted.states[-1], [3.0, 0.0])
        assert_allclose(base.blend(shifted, 0.5).velocities, np.tile([1.5, 0.0], (10, 1)))

    def test_csv_layout(self):
        lines = _line_member(1.0, steps=4).to_csv_text().splitlines()
        assert lines[0] == "t,u_1,u_2,v_1,v_2,residual"
        assert lines[1] == "0,0,0,,,"
        assert len(lines) == 6
        assert lines[-1].startswith("1,1,0,1,0")

    def test_states_are_read_only(self):
        with pytest.raises(ValueError):
            _line_member(1.0).states[0, 0] = 7.0

    def test_summary_keys(self):
        summary = _line_member(2.0).summary()
        assert summary["steps"] == 10
        assert summary["c0_norm"] == pytest.approx(2.0)
        assert summary["total_variation"] == pytest.approx(2.0)


class TestProblemSpec:

    def test_admissibility_flag(self, line_problem):
        assert line_problem().u0_admissible
        assert not line_problem(u0=[0.0, 1.0]).u0_admissible

    def test_dimension_mismatch(self, line_problem):
        with pytest.raises(InvariantViolation, match="dimensions"):
            line_problem(u0=[0.0, 0.0, 0.0])

    def test_non_positive_horizon(self, line_problem):
        with pytest.raises(InvariantViolation, match="horizon"):
            line_problem(horizon=0.0)

    def test_u0_is_copied_read_only(self, line_problem):
        u0 = np.array([2.0, 0.0])
        spec = line_problem(u0=u0)
        u0[0] = 9.0
        assert_array_equal(spec.u0, [2.0, 0.0])
        assert not spec.u0.flags.writeable
