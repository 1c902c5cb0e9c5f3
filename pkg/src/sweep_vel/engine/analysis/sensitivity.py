"""
Script:         sensitivity.py
Author:         SweepVel Team

Description:
    Lipschitz dependence of the solution on the initial value. With A0 coercive (modulus alpha0) the solution
    map u0 -> u is Lipschitz in C0 with modulus sqrt(||A0|| / alpha0); with A1 coercive (alpha1) the modulus is
    sqrt(T ||A0|| / (2 alpha1)) + 1. The experiment solves from pairs of admissible initial values and compares
    the observed C0 ratios against the modulus with a multiplicative slack absorbing discretization error.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (CoreLogger, CoreTelemetry, InvariantViolation, MissingConstant, PackageGlobals, ProblemSpec,
                       SensitivityModeType, Trajectory, VISolveConfig, c0_distance, solve)

SWEEP_VEL_MODULE_NAME: str = "Sensitivity"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Initial-value sensitivity experiments"

DEFAULT_SLACK: float = 0.05
# Pairs closer than this are rejected
MIN_SEPARATION: float = 1e-12
MEMBERSHIP_TOL: float = 1e-9
# Relative tolerance on the discrete energy decrease
ENERGY_TOL: float = 1e-9


@dataclass(frozen=True)
class SensitivityPair:
    """ One initial pair and what its two solutions did. """
    x0: list[float]
    y0: list[float]
    initial_distance: float
    c0_distance: float
    ratio: float
    energy_nonincreasing: Optional[bool] = None
    velocity_gap: Optional[float] = None
    velocity_gap_bound: Optional[float] = None


@dataclass(frozen=True)
class SensitivityReport:
    mode: SensitivityModeType
    modulus_theoretical: float
    slack: float
    steps: int
    pairs: list[SensitivityPair] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((pair.ratio for pair in self.pairs), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_ratio <= self.modulus_theoretical * (1.0 + self.slack)

    @property
    def violations(self) -> list[SensitivityPair]:
        limit = self.modulus_theoretical * (1.0 + self.slack)
        return [pair for pair in self.pairs if pair.ratio > limit]

    def to_dict(self) -> dict[str, Any]:
        return {"mode": self.mode.value, "modulus_theoretical": self.modulus_theoretical, "slack": self.slack,
                "steps": self.steps, "max_ratio": self.max_ratio, "pass": self.passed,
                "pairs": [vars(pair) for pair in self.pairs]}

    def rows(self) -> list[dict[str, Any]]:
        return [{"pair": index, "initial_distance": pair.initial_distance, "c0_distance": pair.c0_distance,
                 "ratio": pair.ratio, "modulus": self.modulus_theoretical}
                for index, pair in enumerate(self.pairs)]


def theoretical_modulus(spec: ProblemSpec, mode: SensitivityModeType) -> float:
    """
    Raises:
        MissingConstant: The operator the mode relies on is not coercive.
    """
    norm_a0 = spec.A0.norm
    if mode is SensitivityModeType.A0_COERCIVE:
        alpha0 = spec.A0.coercivity
        if alpha0 <= 0.0:
            raise MissingConstant("alpha0", "A0 is not coercive")
        return math.sqrt(norm_a0 / alpha0)

    alpha1 = spec.A1.coercivity
    if alpha1 <= 0.0:
        raise MissingConstant("alpha1", "A1 is not coercive")
    return math.sqrt(spec.T * norm_a0 / (2.0 * alpha1)) + 1.0


def random_initial_pairs(spec: ProblemSpec, count: int, rng: np.random.Generator,
                         radius: Optional[float] = None) -> list[tuple[np.ndarray, np.ndarray]]:
    """
    Pairs drawn uniformly from the ball of radius rho0 (the norm bound of C(0), else max(1, ||u0||)) and
    projected onto C(0). Coinciding draws are redrawn.
    """
    initial_set = spec.C.at(0.0)
    if radius is None:
        radius = initial_set.norm_bound()
    if radius is None:
        radius = max(1.0, float(np.linalg.norm(spec.u0)))

    def _draw() -> np.ndarray:
        direction = rng.standard_normal(spec.dim)
        direction /= max(float(np.linalg.norm(direction)), MIN_SEPARATION)
        point = radius * rng.random() ** (1.0 / spec.dim) * direction
        return initial_set.project(point)

    pairs = []
    while len(pairs) < count:
        x0, y0 = _draw(), _draw()
        if np.linalg.norm(x0 - y0) >= 1e3 * MIN_SEPARATION:
            pairs.append((x0, y0))
    return pairs


def _pair_energy(spec: ProblemSpec, x: Trajectory, y: Trajectory) -> bool:
    difference = x.states - y.states
    energy = np.einsum("ki,ij,kj->k", difference, spec.A0.entries, difference)
    return bool(np.all(np.diff(energy) <= ENERGY_TOL * (1.0 + energy[0])))


def _run_pair(spec: ProblemSpec, mode: SensitivityModeType, x0: np.ndarray, y0: np.ndarray, steps: int,
              cfg: VISolveConfig) -> SensitivityPair:
    distance = float(np.linalg.norm(x0 - y0))
    x = solve(spec.replace(u0=x0), steps, cfg)
    y = solve(spec.replace(u0=y0), steps, cfg)
    gap = c0_distance(x, y)

    extras: dict[str, Any] = {"energy_nonincreasing": _pair_energy(spec, x, y)}
    if mode is SensitivityModeType.A1_COERCIVE:
        extras["velocity_gap"] = x.h * float(np.sum(np.linalg.norm(x.velocities - y.velocities, axis=1) ** 2))
        extras["velocity_gap_bound"] = spec.A0.norm * distance ** 2 / (2.0 * spec.A1.coercivity)

    return SensitivityPair(x0=x0.tolist(), y0=y0.tolist(), initial_distance=distance, c0_distance=gap,
                           ratio=gap / distance, **extras)


def sensitivity_experiment(spec: ProblemSpec, initials: Sequence[tuple[Sequence[float], Sequence[float]]],
                           mode: SensitivityModeType, steps: int, slack: float = DEFAULT_SLACK,
                           cfg: VISolveConfig = VISolveConfig(), threads: Optional[int] = None) -> SensitivityReport:
    """
    Solve from every initial pair and compare C0 ratios with the theoretical modulus.
    Args:
        spec: Problem instance; its own u0 is ignored.
        initials: Pairs (x0, y0), each in C(0).
        mode: Which coercivity regime to check.
        steps: Grid size N.
        slack: Multiplicative slack on the modulus.
        cfg: Step VI solver configuration.
        threads: Worker cap; defaults to the package thread cap.
    Raises:
        MissingConstant: Mode-matching operator not coercive.
        InvariantViolation: An initial value outside C(0) or a degenerate pair.
    """
    modulus = theoretical_modulus(spec, mode)
    initial_set = spec.C.at(0.0)
    pairs = []
    for index, (x0, y0) in enumerate(initials):
        x0, y0 = np.asarray(x0, dtype=float), np.asarray(y0, dtype=float)
        for label, point in (("x0", x0), ("y0", y0)):
            if not initial_set.contains(point, MEMBERSHIP_TOL):
                raise InvariantViolation("initial value", f"pair {index}: {label}={point.tolist()} is not in C(0)")
        if np.linalg.norm(x0 - y0) < MIN_SEPARATION:
            raise InvariantViolation("initial pair", f"pair {index}: initial values coincide")
        pairs.append((x0, y0))

    workers = max(1, min(threads or PackageGlobals.thread_cap(), len(pairs) or 1))
    with CoreTelemetry.span("analysis.sensitivity", mode=mode.value, pairs=len(pairs), steps=steps):
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda pair: _run_pair(spec, mode, pair[0], pair[1], steps, cfg), pairs))

    report = SensitivityReport(mode=mode, modulus_theoretical=modulus, slack=slack, steps=steps, pairs=results)
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).info(
        f"Sensitivity ({mode.value}): max ratio {report.max_ratio:.6f} vs modulus {modulus:.6f} "
        f"over {len(results)} pair(s) with {workers} worker(s)")
    return report
