"""
Script:         integrator.py
Author:         SweepVel Team

Description:
    Implicit catching-up discretization of A1 u'(t) + A0 u(t) - f(t) in -N_C(t)(u'(t)) on a uniform grid.
    Each step solves the VI with the composite operator M = A1 + h A0 and drift q = A0 u_{k-1} - f(t_k), which
    keeps the step strongly monotone whenever either operator is coercive. Velocities sit on right endpoints
    and states follow u_k = u_{k-1} + h v_k.

    Also hosts the C0 and W^{1,1} norms and distances over trajectories and the discrete solution certificate.
"""

import csv
import dataclasses
import io
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence, Union

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (CoreLogger, CoreTelemetry, InvariantViolation, MovingSet, NoConverge, StepVI,
                       SymmetricOperator, TimeFunction, VISolveConfig, solve_vi)

SWEEP_VEL_MODULE_NAME: str = "Integrator"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Catching-up time stepping, norms and certification"

# u0 in C(0) acceptance
MEMBERSHIP_TOL: float = 1e-9
# Relative agreement of grids compared by the distance functions
GRID_TOL: float = 1e-12

ArrayLike = Union[np.ndarray, Sequence[float]]


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """
    One instance (A0, A1, f, C, u0, T). 'u0_admissible' records whether u0 lies in C(0); solving is allowed
    either way, theorem checks require it. 'reference' optionally holds a closed-form solution.
    """
    A0: SymmetricOperator
    A1: SymmetricOperator
    f: TimeFunction
    C: MovingSet
    u0: np.ndarray
    T: float
    reference: Optional[TimeFunction] = None
    name: Optional[str] = None
    u0_admissible: bool = dataclasses.field(init=False, default=False)

    def __post_init__(self):
        u0 = np.array(self.u0, dtype=float).reshape(-1)
        u0.setflags(write=False)
        object.__setattr__(self, "u0", u0)
        object.__setattr__(self, "T", float(self.T))

        if not self.T > 0.0 or not np.isfinite(self.T):
            raise InvariantViolation("horizon", f"T must be a positive real, got {self.T!r}")
        dims = {"A0": self.A0.dim, "A1": self.A1.dim, "f": self.f.dim, "C": self.C.dim, "u0": u0.size}
        if self.reference is not None:
            dims["reference"] = self.reference.dim
        if len(set(dims.values())) != 1:
            raise InvariantViolation("dimensions", ", ".join(f"{k}={v}" for k, v in dims.items()))

        if self.C.horizon != self.T:
            object.__setattr__(self, "C", self.C.with_horizon(self.T))
        object.__setattr__(self, "u0_admissible", bool(self.C.at(0.0).contains(u0, MEMBERSHIP_TOL)))

    @property
    def dim(self) -> int:
        return self.u0.size

    def replace(self, **changes: Any) -> "ProblemSpec":
        """ Copy with fields replaced; invariants are re-checked. """
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Discrete solution candidate on the uniform grid t_k = k h, k = 0..N. 'velocities[k-1]' is v_k, constant on
    (t_{k-1}, t_k]; 'residuals[k-1]' is the step's VI residual (NaN for hand-built candidates).
    """
    times: np.ndarray
    states: np.ndarray
    velocities: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        for name in ("times", "states", "velocities", "residuals"):
            getattr(self, name).setflags(write=False)

    @classmethod
    def from_velocities(cls, u0: ArrayLike, horizon: float, velocities: ArrayLike,
                        residuals: Optional[ArrayLike] = None) -> "Trajectory":
        """ Accumulate u_k = u_{k-1} + h v_k from u0. """
        velocities = np.array(velocities, dtype=float)
        u0 = np.asarray(u0, dtype=float).reshape(-1)
        if velocities.ndim != 2 or velocities.shape[0] < 1 or velocities.shape[1] != u0.size:
            raise ValueError(f"velocities must be an (N, {u0.size}) array with N >= 1, got {velocities.shape}")

        steps = velocities.shape[0]
        h = horizon / steps
        states = np.cumsum(np.vstack([u0, h * velocities]), axis=0)
        residuals = np.full(steps, np.nan) if residuals is None else np.array(residuals, dtype=float)
        return cls(times=np.linspace(0.0, horizon, steps + 1), states=states, velocities=velocities,
                   residuals=residuals)

    @property
    def steps(self) -> int:
        return int(self.velocities.shape[0])

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def h(self) -> float:
        return self.horizon / self.steps

    @property
    def dim(self) -> int:
        return int(self.states.shape[1])

    @property
    def u0(self) -> np.ndarray:
        return self.states[0]

    def evaluate(self, t: float) -> np.ndarray:
        """ Piecewise-linear interpolant at t. """
        return np.array([np.interp(t, self.times, self.states[:, i]) for i in range(self.dim)])

    def with_velocities(self, velocities: ArrayLike) -> "Trajectory":
        return Trajectory.from_velocities(self.u0, self.horizon, velocities)

    def shift_along(self, direction: ArrayLike, amount: float) -> "Trajectory":
        """ The member u + amount * t * direction of the affine family through this trajectory. """
        return self.with_velocities(self.velocities + amount * np.asarray(direction, dtype=float))

    def blend(self, other: "Trajectory", weight: float) -> "Trajectory":
        """ Trajectory from u0 with velocities (1 - weight) v + weight v'. """
        check_same_grid(self, other)
        return self.with_velocities((1.0 - weight) * self.velocities + weight * other.velocities)

    @property
    def max_residual(self) -> float:
        finite = self.residuals[np.isfinite(self.residuals)]
        return float(np.max(finite)) if finite.size else float("nan")

    @property
    def max_velocity(self) -> float:
        return float(np.max(np.linalg.norm(self.velocities, axis=1)))

    @property
    def total_variation(self) -> float:
        """ h * sum ||v_k||, exact for the interpolant. """
        return self.h * float(np.sum(np.linalg.norm(self.velocities, axis=1)))

    def summary(self) -> dict[str, Any]:
        return {"steps": self.steps, "h": self.h, "T": self.horizon, "max_residual": self.max_residual,
                "max_velocity": self.max_velocity, "c0_norm": c0_norm(self), "w11_norm": w11_norm(self),
                "total_variation": self.total_variation}

    def rows(self) -> list[list[Optional[float]]]:
        """ One row per node: t, u, v, residual; velocity and residual are None at k = 0. """
        rows = [[float(self.times[0]), *self.states[0].tolist(), *([None] * self.dim), None]]
        for k in range(1, self.steps + 1):
            rows.append([float(self.times[k]), *self.states[k].tolist(), *self.velocities[k - 1].tolist(),
                         float(self.residuals[k - 1])])
        return rows

    def header(self) -> list[str]:
        return (["t"] + [f"u_{i}" for i in range(1, self.dim + 1)] + [f"v_{i}" for i in range(1, self.dim + 1)]
                + ["residual"])

    def to_csv_text(self) -> str:
        """ CSV with 17 significant digits; blank cells for missing values. """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.header())
        for row in self.rows():
            writer.writerow(["" if value is None or not np.isfinite(value) else format(value, ".17g")
                             for value in row])
        return buffer.getvalue()

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.write_text(self.to_csv_text(), encoding="utf-8")
        return path


@dataclass(frozen=True)
class Certificate:
    """ Outcome of 'certify'. 'failed_step' is the first offending step, 0 for the initial condition. """
    is_solution: bool
    max_residual: float
    failed_step: Optional[int] = None

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)


def check_same_grid(a: Trajectory, b: Trajectory) -> None:
    """
    Raises:
        ValueError: The trajectories do not share a grid.
    """
    if a.steps != b.steps or a.dim != b.dim or \
            abs(a.horizon - b.horizon) > GRID_TOL * max(1.0, abs(a.horizon)):
        raise ValueError(f"grid mismatch: N={a.steps}, T={a.horizon!r}, n={a.dim} vs "
                         f"N={b.steps}, T={b.horizon!r}, n={b.dim}")


def _w11(states: np.ndarray, velocities: np.ndarray, h: float) -> float:
    norms = np.linalg.norm(states, axis=1)
    trapezoid = h * (float(np.sum(norms)) - 0.5 * float(norms[0] + norms[-1]))
    return trapezoid + h * float(np.sum(np.linalg.norm(velocities, axis=1)))


def c0_norm(traj: Trajectory) -> float:
    """ max_k ||u_k|| """
    return float(np.max(np.linalg.norm(traj.states, axis=1)))


def c0_distance(a: Trajectory, b: Trajectory) -> float:
    check_same_grid(a, b)
    return float(np.max(np.linalg.norm(a.states - b.states, axis=1)))


def w11_norm(traj: Trajectory) -> float:
    """ Trapezoid rule on ||u(t)|| plus h * sum ||v_k||. """
    return _w11(traj.states, traj.velocities, traj.h)


def w11_distance(a: Trajectory, b: Trajectory) -> float:
    check_same_grid(a, b)
    return _w11(a.states - b.states, a.velocities - b.velocities, a.h)


def node_error(traj: Trajectory, reference: TimeFunction) -> float:
    """ max_k ||u_k - u(t_k)|| against a closed-form solution. """
    exact = reference.sample(traj.times)
    return float(np.max(np.linalg.norm(traj.states - exact, axis=1)))


def step_operator(spec: ProblemSpec, h: float) -> SymmetricOperator:
    """ Composite step operator A1 + h A0. """
    return spec.A1.plus(spec.A0, h)


def solve(spec: ProblemSpec, steps: int, cfg: VISolveConfig = VISolveConfig()) -> Trajectory:
    """
    Run the catching-up scheme with N = steps.
    Args:
        spec: Problem instance.
        steps: Number of uniform steps N >= 1.
        cfg: Step VI solver configuration.
    Raises:
        NoConverge: A step VI missed its tolerance; carries the step index.
    """
    if steps < 1:
        raise ValueError(f"the number of steps must be >= 1, got {steps}")

    logger = CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME)
    h = spec.T / steps
    times = np.linspace(0.0, spec.T, steps + 1)
    operator = step_operator(spec, h)
    states = np.zeros((steps + 1, spec.dim))
    states[0] = spec.u0
    velocities = np.zeros((steps, spec.dim))
    residuals = np.zeros(steps)
    previous: Optional[np.ndarray] = None
    started = time.perf_counter()

    with CoreTelemetry.span("integrator.solve", steps=steps, dim=spec.dim):
        for k in range(1, steps + 1):
            t = float(times[k])
            problem = StepVI(M=operator, q=spec.A0.apply(states[k - 1]) - spec.f(t), S=spec.C.at(t))
            try:
                result = solve_vi(problem, cfg, initial=previous if cfg.warm_start else None)
            except NoConverge as exception:
                raise exception.at_step(k) from exception

            velocities[k - 1] = result.v
            residuals[k - 1] = result.residual
            states[k] = states[k - 1] + h * result.v
            previous = result.v

    CoreTelemetry.count("integrator.steps", steps, description="Catching-up steps taken")
    trajectory = Trajectory(times=times, states=states, velocities=velocities, residuals=residuals)
    logger.info(f"Solved {spec.name or 'problem'} with N={steps} in {time.perf_counter() - started:.2f}s, "
                f"max residual {trajectory.max_residual:.2e}")
    return trajectory


def certify(spec: ProblemSpec, traj: Trajectory, tol: float) -> Certificate:
    """
    Discrete solution check: at every step v_k lies in C(t_k) and -(A1 v_k + A0 u_k - f(t_k)) is normal to
    C(t_k) at v_k, read through the projection identity; u_0 must equal spec.u0.
    """
    if traj.dim != spec.dim or abs(traj.horizon - spec.T) > GRID_TOL * max(1.0, spec.T):
        raise ValueError(f"trajectory grid (T={traj.horizon!r}, n={traj.dim}) does not match the problem "
                         f"(T={spec.T!r}, n={spec.dim})")

    worst = float(np.linalg.norm(traj.u0 - spec.u0))
    failed: Optional[int] = 0 if worst > tol else None

    for k in range(1, traj.steps + 1):
        t = float(traj.times[k])
        feasible = spec.C.at(t)
        v = traj.velocities[k - 1]
        # A0 u_k = A0 u_{k-1} + h A0 v_k: the same inclusion the step VI solves with M = A1 + h A0
        w = -(spec.A1.apply(v) + spec.A0.apply(traj.states[k]) - spec.f(t))
        residual = max(feasible.distance(v), float(np.linalg.norm(feasible.project(v + w) - v)))
        worst = max(worst, residual)
        if failed is None and residual > tol:
            failed = k

    return Certificate(is_solution=failed is None, max_residual=worst, failed_step=failed)
