"""
Script:         boundedness.py
Author:         SweepVel Team

Description:
    A priori bounds on solutions in C0 and W^{1,1} under three sets of hypotheses, checked against a solver run.

    h3a: C(0) bounded with radius rho0 and C Hausdorff-continuous with modulus g; velocities stay in the ball of
         radius rho = rho0 + max |g(0) - g(s)|, hence ||u(t)|| <= ||u0|| + rho T.
    h3b: C Hausdorff-continuous and <A1 x, x> >= c1 ||x||^2 - c2 on C(t); with beta = ||u0|| + max |g(0) - g| + eps
         and gamma = max{(beta ||A1|| + ||f||) / c1, ||A0|| / c1}, ||u(t)|| <= ||u0|| + (1 + ||u0||)(e^{gamma T} - 1).
    h3c: as h3b with a user-declared beta standing for the Lipschitz-like covering constant.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (BoundModeType, CoreLogger, CoreTelemetry, InvariantViolation, MissingConstant,
                       MovingFamilyType, ProblemSpec, Trajectory, VISolveConfig, c0_norm, check_gronwall, solve,
                       w11_norm)

SWEEP_VEL_MODULE_NAME: str = "Boundedness"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Boundedness constants and checks"

DEFAULT_EPSILON: float = 0.01
DEFAULT_ABS_SLACK: float = 1e-8
# Implicit stepping inflates the Gronwall factor by O(h); applies to h3b and h3c only
DEFAULT_REL_SLACK: float = 0.05


@dataclass(frozen=True)
class BoundParams:
    """ User-supplied constants; None means 'compute it or fail'. """
    rho0: Optional[float] = None
    c_hat1: Optional[float] = None
    c_hat2: Optional[float] = None
    beta: Optional[float] = None
    epsilon: float = DEFAULT_EPSILON
    abs_slack: float = DEFAULT_ABS_SLACK
    rel_slack: float = DEFAULT_REL_SLACK

    @classmethod
    def from_dict(cls, data: Optional[dict[str, Any]], **defaults: Any) -> "BoundParams":
        merged = {**{k: v for k, v in defaults.items() if v is not None}, **(data or {})}
        return cls(**{k: merged[k] for k in cls.__dataclass_fields__ if k in merged})


@dataclass(frozen=True)
class BoundReport:
    mode: BoundModeType
    constants: dict[str, float]
    bound: float
    velocity_bound: float
    velocity_integral_bound: float
    w11_bound: float
    observed_c0: float
    observed_w11: float
    observed_max_velocity: float
    observed_total_variation: float
    velocity_violations: int
    slack: dict[str, float]
    gronwall_audit: Optional[dict[str, Any]] = None
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {"mode": self.mode.value, "constants": self.constants, "bound": self.bound,
                "velocity_bound": self.velocity_bound, "velocity_integral_bound": self.velocity_integral_bound,
                "w11_bound": self.w11_bound, "observed_c0": self.observed_c0, "observed_w11": self.observed_w11,
                "observed_max_velocity": self.observed_max_velocity,
                "observed_total_variation": self.observed_total_variation,
                "velocity_violations": self.velocity_violations, "slack": self.slack,
                "gronwall_audit": self.gronwall_audit, "pass": self.passed, "failures": self.failures}

    def rows(self) -> list[dict[str, Any]]:
        return [{"quantity": "c0", "observed": self.observed_c0, "bound": self.bound},
                {"quantity": "total_variation", "observed": self.observed_total_variation,
                 "bound": self.velocity_integral_bound},
                {"quantity": "max_velocity", "observed": self.observed_max_velocity, "bound": self.velocity_bound},
                {"quantity": "w11", "observed": self.observed_w11, "bound": self.w11_bound}]


def modulus_drift(spec: ProblemSpec) -> float:
    """
    max |g(0) - g(s)| over [0, T]; a static family without g drifts by 0.
    Raises:
        MissingConstant: Moving family without a declared g.
    """
    if spec.C.modulus is None:
        if spec.C.family is MovingFamilyType.STATIC:
            return 0.0
        raise MissingConstant("g", f"the {spec.C.family.value} family declares no continuity modulus")
    return spec.C.max_modulus_drift(spec.T)


def _coercivity_constants(spec: ProblemSpec, params: BoundParams) -> tuple[float, float]:
    c_hat1, c_hat2 = params.c_hat1, params.c_hat2
    alpha1 = spec.A1.coercivity
    if c_hat1 is None:
        if alpha1 <= 0.0:
            raise MissingConstant("c_hat1", "A1 is not coercive; supply c_hat1 and c_hat2")
        c_hat1 = alpha1
    if c_hat2 is None:
        if alpha1 <= 0.0:
            raise MissingConstant("c_hat2", "A1 is not coercive; supply c_hat2")
        c_hat2 = 0.0
    return float(c_hat1), float(c_hat2)


def _velocity_root(c_hat1: float, a1: np.ndarray, a2: np.ndarray) -> np.ndarray:
    """ Positive root of c1 r^2 - a1 r - a2. """
    return (a1 + np.sqrt(a1 ** 2 + 4.0 * c_hat1 * a2)) / (2.0 * c_hat1)


def boundedness_bound(spec: ProblemSpec, mode: BoundModeType, params: BoundParams = BoundParams(), steps: int = 1000,
                      cfg: VISolveConfig = VISolveConfig(),
                      trajectory: Optional[Trajectory] = None) -> BoundReport:
    """
    Compute the mode's constants, solve (unless a trajectory is supplied) and compare.
    Raises:
        MissingConstant: A required constant is neither computable nor supplied.
        InvariantViolation: u0 is not in C(0).
    """
    if not spec.u0_admissible:
        raise InvariantViolation("initial value", f"u0={spec.u0.tolist()} is not in C(0)")

    u0_norm = float(np.linalg.norm(spec.u0))
    horizon = spec.T
    constants: dict[str, float] = {}

    if mode is BoundModeType.H3A:
        rho0 = params.rho0 if params.rho0 is not None else spec.C.at(0.0).norm_bound()
        if rho0 is None:
            raise MissingConstant("rho0", "C(0) is unbounded; its radius is undefined")
        rho = rho0 + modulus_drift(spec)
        constants.update(rho0=rho0, rho=rho)
        bound = u0_norm + rho * horizon
        velocity_integral_bound = rho * horizon
        rel_slack = 0.0
    else:
        c_hat1, c_hat2 = _coercivity_constants(spec, params)
        if mode is BoundModeType.H3B:
            beta = u0_norm + modulus_drift(spec) + params.epsilon
            constants["epsilon"] = params.epsilon
        else:
            beta = params.beta if params.beta is not None else spec.C.lipschitz_beta
            if beta is None:
                raise MissingConstant("beta", "the covering constant has no constructive recipe; supply beta")
        f_norm = spec.f.sup_norm(horizon)
        gamma = max((beta * spec.A1.norm + f_norm) / c_hat1, spec.A0.norm / c_hat1)
        constants.update(beta=beta, c_hat1=c_hat1, c_hat2=c_hat2, gamma=gamma, f_norm=f_norm)
        velocity_integral_bound = (1.0 + u0_norm) * math.expm1(gamma * horizon)
        bound = u0_norm + velocity_integral_bound
        rel_slack = params.rel_slack

    if trajectory is None:
        with CoreTelemetry.span("analysis.boundedness", mode=mode.value, steps=steps):
            trajectory = solve(spec, steps, cfg)

    velocity_norms = np.linalg.norm(trajectory.velocities, axis=1)
    if mode is BoundModeType.H3A:
        per_step = np.full(trajectory.steps, constants["rho"])
    else:
        # Per-step root with the state entering the implicit step
        state_norms = np.linalg.norm(trajectory.states[1:], axis=1)
        f_norm = max(constants["f_norm"], float(np.max(np.linalg.norm(spec.f.sample(trajectory.times), axis=1))))
        a1 = constants["beta"] * spec.A1.norm + spec.A0.norm * state_norms + f_norm
        a2 = constants["beta"] * (spec.A0.norm * state_norms + f_norm) + constants["c_hat2"]
        per_step = _velocity_root(constants["c_hat1"], a1, a2)
        constants["a1_max"] = float(np.max(a1))
        constants["a2_max"] = float(np.max(a2))

    def _within(observed: float, limit: float) -> bool:
        return observed <= limit * (1.0 + rel_slack) + params.abs_slack

    velocity_bound = float(np.max(per_step))
    velocity_violations = int(np.sum(velocity_norms > per_step * (1.0 + rel_slack) + params.abs_slack))
    w11_bound = horizon * bound + velocity_integral_bound
    observed = {"c0": c0_norm(trajectory), "w11": w11_norm(trajectory), "tv": trajectory.total_variation}

    failures = []
    if not _within(observed["c0"], bound):
        failures.append(f"C0 norm {observed['c0']:.12g} exceeds bound {bound:.12g}")
    if not _within(observed["tv"], velocity_integral_bound):
        failures.append(f"velocity integral {observed['tv']:.12g} exceeds {velocity_integral_bound:.12g}")
    if velocity_violations:
        worst = int(np.argmax(velocity_norms - per_step))
        failures.append(f"velocity bound violated at {velocity_violations} step(s), worst at k={worst + 1}: "
                        f"{velocity_norms[worst]:.12g} > {per_step[worst]:.12g}")
    if not _within(observed["w11"], w11_bound):
        failures.append(f"W11 norm {observed['w11']:.12g} exceeds bound {w11_bound:.12g}")

    audit = None
    if mode is not BoundModeType.H3A:
        samples = np.concatenate([velocity_norms[:1], velocity_norms])
        audit = check_gronwall(samples, constants["gamma"] * (1.0 + u0_norm), constants["gamma"],
                               trajectory.h).to_dict()

    report = BoundReport(mode=mode, constants=constants, bound=bound, velocity_bound=velocity_bound,
                         velocity_integral_bound=velocity_integral_bound, w11_bound=w11_bound,
                         observed_c0=observed["c0"], observed_w11=observed["w11"],
                         observed_max_velocity=trajectory.max_velocity, observed_total_variation=observed["tv"],
                         velocity_violations=velocity_violations,
                         slack={"absolute": params.abs_slack, "relative": rel_slack}, gronwall_audit=audit,
                         failures=failures)
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).info(
        f"Boundedness ({mode.value}): C0 {report.observed_c0:.6g} vs bound {bound:.6g}, "
        f"{'pass' if report.passed else 'FAIL'}")
    return report
