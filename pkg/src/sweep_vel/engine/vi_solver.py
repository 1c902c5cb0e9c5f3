"""
Script:         vi_solver.py
Author:         SweepVel Team

Description:
    Per-time-step variational inequality solver: find v in S with <M v + q, z - v> >= 0 for every z in S,
    M symmetric PSD.

    Strongly monotone steps (lambda_min(M) > 0) run the projected fixed-point iteration
    v <- P_S(v - rho (M v + q)). Degenerate steps walk a Tikhonov schedule M + eps_j I with warm starts, which
    steers the iterates toward the minimal-norm solution, then polish the unregularized problem until its
    natural-map residual meets the tolerance.
"""

import dataclasses
import math
from dataclasses import dataclass
from typing import Any, Optional, Union

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (ConvexSet, CoreLogger, CoreTelemetry, DEFAULT_PROJECTION, InvariantViolation, NoConverge,
                       ProjectionConfig, StepRuleType, SymmetricOperator)

SWEEP_VEL_MODULE_NAME: str = "VISolver"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Projected fixed-point VI solver with Tikhonov selection"

# Certification tolerance relative to the residual and projection targets
CERTIFY_FACTOR: float = 10.0


@dataclass(frozen=True)
class VISolveConfig:
    """
    Solver budget and schedule.
    Attributes:
        tol: Natural-map residual target.
        max_iter: Iteration budget shared by all stages of one solve.
        eps0, theta, stages: Tikhonov schedule eps_j = eps0 * theta**j, j < stages.
        step_rule: 'contraction' (alpha / L**2) or 'symmetric' (2 / (alpha + L)) for coercive steps.
            Tikhonov stages always take the symmetric step.
        warm_start: Start each time step from the previous velocity.
        projection: Budget for Dykstra projections.
    """
    tol: float = 1e-10
    max_iter: int = 1_000_000
    eps0: float = 1e-2
    theta: float = 0.1
    stages: int = 6
    step_rule: StepRuleType = StepRuleType.CONTRACTION
    warm_start: bool = True
    projection: ProjectionConfig = DEFAULT_PROJECTION

    def __post_init__(self):
        if not self.tol > 0.0:
            raise InvariantViolation("solver config", f"tol must be positive, got {self.tol!r}")
        if not 0.0 < self.theta < 1.0:
            raise InvariantViolation("solver config", f"theta must lie in (0, 1), got {self.theta!r}")
        if not self.eps0 > 0.0 or self.stages < 0 or self.max_iter < 1:
            raise InvariantViolation("solver config", "eps0 > 0, stages >= 0 and max_iter >= 1 are required")
        if isinstance(self.step_rule, str):
            rule = StepRuleType.from_str(self.step_rule)
            if rule is None:
                raise InvariantViolation("solver config", f"unknown step rule '{self.step_rule}'")
            object.__setattr__(self, "step_rule", rule)

    @property
    def schedule(self) -> tuple[float, ...]:
        return tuple(self.eps0 * self.theta ** j for j in range(self.stages))

    @property
    def certify_tol(self) -> float:
        """ Tolerance at which this solver's output is certified, leaving room for projection round-off. """
        return CERTIFY_FACTOR * max(self.tol, self.projection.tol)

    def replace(self, **changes: Any) -> "VISolveConfig":
        """ Copy with the given fields replaced; None values are ignored. """
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> dict[str, Any]:
        return {"tol": self.tol, "max_iter": self.max_iter, "eps0": self.eps0, "theta": self.theta,
                "stages": self.stages, "step_rule": self.step_rule.value, "warm_start": self.warm_start}

    @classmethod
    def from_configuration(cls, solver: Optional[dict[str, Any]] = None,
                           projection: Optional[dict[str, Any]] = None) -> "VISolveConfig":
        """ Build from the 'solver' and 'projection' sections of the package configuration. """
        solver = solver or {}
        fields = {name: solver[name] for name in ("tol", "max_iter", "eps0", "theta", "stages", "step_rule",
                                                  "warm_start") if name in solver}
        for name, kind in (("tol", float), ("eps0", float), ("theta", float), ("max_iter", int), ("stages", int)):
            if name in fields:
                fields[name] = kind(fields[name])
        return cls(projection=ProjectionConfig.from_configuration(projection), **fields)


@dataclass(frozen=True, eq=False)
class StepVI:
    """ One step problem: M symmetric PSD, drift q, feasible set S. """
    M: SymmetricOperator
    q: np.ndarray
    S: ConvexSet

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.shape != (self.M.dim,) or self.S.dim != self.M.dim:
            raise InvariantViolation("dimensions", f"operator is {self.M.dim}x{self.M.dim}, drift has shape "
                                                   f"{q.shape}, set lives in R^{self.S.dim}")
        object.__setattr__(self, "q", q)

    def evaluate(self, v: np.ndarray) -> np.ndarray:
        """ M v + q """
        return self.M.entries @ v + self.q


@dataclass(frozen=True, eq=False)
class VIResult:
    """ Selected solution with the natural-map residual at the reported step rho. """
    v: np.ndarray
    residual: float
    rho: float
    iterations: int
    stages: int


def vi_residual(problem: StepVI, v: Union[np.ndarray, list], rho: float,
                cfg: ProjectionConfig = DEFAULT_PROJECTION) -> float:
    """
    Natural-map residual ||v - P_S(v - rho (M v + q))||, zero exactly at solutions.
    """
    if not rho > 0.0:
        raise ValueError(f"rho must be positive, got {rho!r}")
    v = np.asarray(v, dtype=float)
    return float(np.linalg.norm(v - problem.S.project(v - rho * problem.evaluate(v), cfg)))


def _step_size(alpha: float, lipschitz: float, rule: StepRuleType) -> float:
    if rule is StepRuleType.CONTRACTION:
        return alpha / lipschitz ** 2
    return 2.0 / (alpha + lipschitz)


def contraction_factor(alpha: float, lipschitz: float, rule: StepRuleType = StepRuleType.CONTRACTION) -> float:
    """
    Bound c < 1 on ||v_{k+1} - v*|| / ||v_k - v*|| for the step the rule picks on an alpha-coercive,
    L-Lipschitz operator: sqrt(1 - alpha^2 / L^2) for 'contraction', (L - alpha) / (L + alpha) for 'symmetric'.
    """
    if not 0.0 < alpha <= lipschitz:
        raise ValueError(f"expected 0 < alpha <= L, got alpha={alpha!r}, L={lipschitz!r}")
    if rule is StepRuleType.CONTRACTION:
        return math.sqrt(max(0.0, 1.0 - (alpha / lipschitz) ** 2))
    return (lipschitz - alpha) / (lipschitz + alpha)


def _iterate(problem: StepVI, shift: float, rho: float, target: float, v: np.ndarray, budget: int,
             cfg: ProjectionConfig) -> tuple[np.ndarray, float, int, bool]:
    """
    Projected fixed-point iteration on M + shift I. Returns the last iterate whose residual is known, that
    residual, the iterations used and whether the target was met.
    """
    matrix, q, feasible = problem.M.entries, problem.q, problem.S
    residual = float("inf")

    for iteration in range(1, budget + 1):
        candidate = feasible.project(v - rho * (matrix @ v + shift * v + q), cfg)
        residual = float(np.linalg.norm(v - candidate))
        if residual <= target:
            return v, residual, iteration, True
        v = candidate

    return v, residual, budget, False


def solve_vi(problem: StepVI, cfg: VISolveConfig = VISolveConfig(),
             initial: Optional[np.ndarray] = None) -> VIResult:
    """
    Solve the step VI to natural-map residual <= cfg.tol.
    Args:
        problem: The step problem.
        cfg: Solver configuration.
        initial: Warm start; zero when omitted.
    Raises:
        NoConverge: Residual target unreached within cfg.max_iter iterations.
    """
    logger = CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME)
    spectrum = problem.M.spectrum()
    alpha, lipschitz = spectrum.coercivity_modulus, spectrum.operator_norm

    start = np.zeros(problem.M.dim) if initial is None else np.asarray(initial, dtype=float)
    v = problem.S.project(start, cfg.projection)
    remaining = cfg.max_iter

    if alpha > 0.0:
        rho = _step_size(alpha, lipschitz, cfg.step_rule)
        v, residual, used, converged = _iterate(problem, 0.0, rho, cfg.tol * min(1.0, rho), v, remaining,
                                                cfg.projection)
        CoreTelemetry.count("vi.iterations", used, description="Projected fixed-point iterations")
        if not converged:
            raise NoConverge(iterations=used, residual=residual)
        return VIResult(v=v, residual=residual, rho=rho, iterations=used, stages=1)

    # Degenerate step: Tikhonov stages guide the selection, the polish enforces the tolerance
    stage_budget = max(1, cfg.max_iter // (cfg.stages + 1))
    stages = 0
    for eps in cfg.schedule:
        rho = _step_size(eps, lipschitz + eps, StepRuleType.SYMMETRIC)
        target = max(cfg.tol, cfg.theta * eps) * min(1.0, rho)
        v, residual, used, converged = _iterate(problem, eps, rho, target, v, min(stage_budget, remaining),
                                                cfg.projection)
        remaining -= used
        stages += 1
        logger.debug(f"Tikhonov stage eps={eps:.1e}: residual {residual:.3e} after {used} iterations"
                     f"{'' if converged else ' (stage budget spent)'}")

    rho = 1.0 / lipschitz if lipschitz > 0.0 else 1.0
    v, residual, used, converged = _iterate(problem, 0.0, rho, cfg.tol * min(1.0, rho), v, max(remaining, 1),
                                            cfg.projection)
    iterations = cfg.max_iter - remaining + used
    CoreTelemetry.count("vi.iterations", iterations, description="Projected fixed-point iterations")
    if not converged:
        raise NoConverge(iterations=iterations, residual=residual)

    return VIResult(v=v, residual=residual, rho=rho, iterations=iterations, stages=stages + 1)
