import json
from pathlib import Path

import numpy as np
import pytest
from numpy.testing import assert_allclose

import sweep_vel
from sweep_vel import (AffineSubspace, Ball, Box, CoreJSONCProcessor, InvariantViolation, NoConverge, StepRuleType,
                       StepVI, SymmetricOperator, VISolveConfig, contraction_factor, solve_vi, vi_residual)


def _scalar_clamp() -> StepVI:
    return StepVI(M=SymmetricOperator.identity(1), q=np.array([-0.3]), S=Box([-1.0], [1.0]))


class TestSolveVI:

    def test_scalar_clamp(self):
        result = solve_vi(_scalar_clamp())
        assert_allclose(result.v, [0.3], atol=1e-10)
        assert result.stages == 1

    def test_zero_drift_in_ball(self):
        problem = StepVI(M=SymmetricOperator.identity(2), q=np.zeros(2), S=Ball([0.0, 0.0], 1.0))
        assert_allclose(solve_vi(problem).v, [0.0, 0.0], atol=1e-12)

    def test_active_constraint(self):
        problem = StepVI(M=SymmetricOperator.identity(2), q=np.array([-3.0, -4.0]), S=Ball([0.0, 0.0], 1.0))
        assert_allclose(solve_vi(problem).v, [0.6, 0.8], atol=1e-9)

    def test_degenerate_selects_minimal_norm(self):
        h, t = 1e-3, 0.4
        problem = StepVI(M=SymmetricOperator.diagonal([0.0, 1.0 + h]), q=np.array([0.0, -t]),
                         S=AffineSubspace([0.0, 0.0], [[1.0, 0.0]]))
        result = solve_vi(problem)
        assert_allclose(result.v, [0.0, 0.0], atol=1e-9)
        assert result.stages == VISolveConfig().stages + 1

    def test_degenerate_from_off_center_start(self):
        problem = StepVI(M=SymmetricOperator.diagonal([0.0, 1.0]), q=np.array([0.0, -0.5]), S=Box([-1.0, -1.0],
                                                                                                [1.0, 1.0]))
        result = solve_vi(problem, initial=np.array([0.8, 0.0]))
        assert result.v[1] == pytest.approx(0.5, abs=1e-9)
        assert abs(result.v[0]) < 0.8
        assert result.residual <= VISolveConfig().tol

    @pytest.mark.parametrize("rule", list(StepRuleType))
    def test_step_rules_agree(self, rule):
        problem = StepVI(M=SymmetricOperator(np.array([[2.0, 0.5], [0.5, 1.0]])), q=np.array([-3.0, 1.0]),
                         S=Box([-1.0, -1.0], [1.0, 1.0]))
        result = solve_vi(problem, VISolveConfig(step_rule=rule))
        assert vi_residual(problem, result.v, 1.0) <= 1e-9
        assert_allclose(result.v, solve_vi(problem).v, atol=1e-9)

    def test_solution_residual_within_tol(self):
        problem = _scalar_clamp()
        result = solve_vi(problem)
        assert vi_residual(problem, result.v, result.rho) <= VISolveConfig().tol

    def test_budget_exhausted(self):
        problem = StepVI(M=SymmetricOperator.diagonal([1.0, 4.0]), q=np.array([-0.5, -0.5]),
                         S=Ball([0.0, 0.0], 10.0))
        with pytest.raises(NoConverge) as failure:
            solve_vi(problem, VISolveConfig(max_iter=1))
        assert failure.value.iterations == 1
        assert failure.value.step_index is None


class TestResidual:

    @pytest.mark.parametrize("rho", [0.5, 1.0, 2.0, 10.0 / 3.0])
    def test_hand_evaluation(self, rho):
        assert vi_residual(_scalar_clamp(), [0.0], rho) == pytest.approx(0.3 * rho)

    def test_rejects_non_positive_rho(self):
        with pytest.raises(ValueError, match="rho"):
            vi_residual(_scalar_clamp(), [0.0], 0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(InvariantViolation, match="dimensions"):
            StepVI(M=SymmetricOperator.identity(2), q=np.zeros(3), S=Ball([0.0, 0.0], 1.0))


class TestConfig:

    def test_from_configuration_casts(self):
        cfg = VISolveConfig.from_configuration({"tol": "1e-8", "stages": 3.0, "step_rule": "contraction"},
                                               {"tol": 1e-12, "max_iter": 50})
        assert cfg.tol == 1e-8
        assert cfg.stages == 3
        assert cfg.step_rule is StepRuleType.CONTRACTION
        assert cfg.projection.max_iter == 50

    def test_replace_ignores_none(self):
        cfg = VISolveConfig().replace(tol=None, max_iter=10)
        assert cfg.tol == VISolveConfig().tol
        assert cfg.max_iter == 10

    def test_certify_tol(self):
        assert VISolveConfig().certify_tol == pytest.approx(1e-9)
        assert VISolveConfig(tol=1e-6).certify_tol == pytest.approx(1e-5)

    def test_schedule(self):
        assert_allclose(VISolveConfig(eps0=1.0, theta=0.5, stages=3).schedule, [1.0, 0.5, 0.25])

    @pytest.mark.parametrize("changes", [{"theta": 1.0}, {"tol": 0.0}, {"stages": -1}, {"step_rule": "newton"}])
    def test_invalid(self, changes):
        with pytest.raises(InvariantViolation):
            VISolveConfig(**changes)


class TestDefaultStepRule:

    def test_contraction_is_the_default(self):
        assert VISolveConfig().step_rule is StepRuleType.CONTRACTION

    def test_packaged_configuration_selects_contraction(self):
        config_file = Path(sweep_vel.__file__).parent / "config" / "sweep_vel.jsonc"
        configuration = json.loads(CoreJSONCProcessor.strip_comments(config_file.read_text(encoding="utf-8")))
        assert configuration["solver"]["step_rule"] == "contraction"
        cfg = VISolveConfig.from_configuration(configuration["solver"], configuration.get("projection"))
        assert cfg.step_rule is StepRuleType.CONTRACTION

    def test_default_factors(self):
        assert contraction_factor(1.0, 4.0) == pytest.approx(np.sqrt(1.0 - 1.0 / 16.0))
        assert contraction_factor(1.0, 4.0, StepRuleType.SYMMETRIC) == pytest.approx(0.6)
        assert contraction_factor(2.0, 2.0) == 0.0

    @pytest.mark.parametrize("alpha, lipschitz", [(0.0, 1.0), (-1.0, 2.0), (3.0, 2.0)])
    def test_factor_rejects_out_of_range(self, alpha, lipschitz):
        with pytest.raises(ValueError):
            contraction_factor(alpha, lipschitz)

    def test_default_solve_reports_contraction_step(self):
        problem = StepVI(M=SymmetricOperator.diagonal([1.0, 4.0]), q=np.array([0.5, -1.0]),
                         S=Box([-1.0, -1.0], [1.0, 1.0]))
        assert solve_vi(problem).rho == pytest.approx(1.0 / 16.0)


def _random_operator(rng: np.random.Generator, eigenvalues) -> SymmetricOperator:
    q, r = np.linalg.qr(rng.standard_normal((len(eigenvalues), len(eigenvalues))))
    q = q * np.sign(np.diag(r))
    m = (q * np.asarray(eigenvalues, dtype=float)) @ q.T
    return SymmetricOperator((m + m.T) / 2.0)


class TestContractionBound:

    @pytest.mark.parametrize("feasible", [Box([-1.0, -1.0, -1.0], [1.0, 1.0, 1.0]), Ball([0.0, 0.0, 0.0], 1.0)],
                             ids=["box", "ball"])
    def test_measured_factor_stays_below_bound(self, rng, feasible):
        operator = _random_operator(rng, [0.5, 1.5, 3.0])
        problem = StepVI(M=operator, q=3.0 * rng.standard_normal(3), S=feasible)
        solution = solve_vi(problem, VISolveConfig(tol=1e-12)).v
        alpha, lipschitz = operator.coercivity, operator.norm
        factor = contraction_factor(alpha, lipschitz)
        rho = alpha / lipschitz ** 2

        v = feasible.project(5.0 * rng.standard_normal(3))
        for _ in range(30):
            following = feasible.project(v - rho * problem.evaluate(v))
            assert np.linalg.norm(following - solution) <= factor * np.linalg.norm(v - solution) + 1e-10
            v = following


class TestCertificate:

    @pytest.mark.parametrize("eigenvalues", [(0.5, 1.5, 3.0), (0.0, 2.0, 3.0), (0.0, 0.0, 1.0)])
    def test_minus_drift_is_normal_at_solution(self, rng, eigenvalues):
        cfg = VISolveConfig()
        feasible = Box([-1.0, -0.5, -2.0], [1.0, 0.5, 2.0])
        for _ in range(10):
            problem = StepVI(M=_random_operator(rng, eigenvalues), q=2.0 * rng.standard_normal(3), S=feasible)
            v = solve_vi(problem, cfg).v
            assert feasible.normal_cone_contains(v, -problem.evaluate(v), cfg.certify_tol)

    def test_coercive_ball_certificate(self, rng):
        cfg = VISolveConfig()
        feasible = Ball([0.2, -0.1, 0.0], 0.8)
        for _ in range(10):
            problem = StepVI(M=_random_operator(rng, [1.0, 2.0, 5.0]), q=4.0 * rng.standard_normal(3), S=feasible)
            v = solve_vi(problem, cfg).v
            assert feasible.normal_cone_contains(v, -problem.evaluate(v), cfg.certify_tol)
            for z in (feasible.project(y) for y in 3.0 * rng.standard_normal((20, 3))):
                assert float(problem.evaluate(v) @ (z - v)) >= -cfg.certify_tol * (1.0 + np.linalg.norm(z - v))
