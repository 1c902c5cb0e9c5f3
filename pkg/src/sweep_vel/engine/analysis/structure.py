"""
Script:         structure.py
Author:         SweepVel Team

Description:
    Structure of the solution set.
    - With A0 = 0 the solution set is convex: blends w = u0 + int((1 - l) u' + l v') of two solutions certify.
    - Any two solutions u, v satisfy v in u + K, where K holds the functions y with y(0) = 0 and
      y'(t) in (C(t) - u'(t)) intersected with ker A0.
    - With A1 = 0 and f(t) orthogonal to ker A0, u + x is again a solution for every x in K; perturbations are
      sampled along a kernel direction by bisection on the admissible step.
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (Certificate, CoreLogger, InvariantViolation, KernelViolation, ProblemSpec, Trajectory,
                       certify, check_same_grid)

SWEEP_VEL_MODULE_NAME: str = "Structure"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Convexity, outer estimate and kernel perturbations"

DEFAULT_TOL: float = 1e-9
KERNEL_TOL: float = 1e-10
UNIT_TOL: float = 1e-12
BISECTION_ITERATIONS: int = 20


@dataclass(frozen=True)
class ConvexityReport:
    lambdas: list[float]
    residuals: list[float]
    base_certified: bool
    other_certified: bool
    tol: float

    @property
    def passed(self) -> bool:
        return self.base_certified and self.other_certified and all(r <= self.tol for r in self.residuals)

    def to_dict(self) -> dict[str, Any]:
        return {"lambdas": self.lambdas, "residuals": self.residuals, "base_certified": self.base_certified,
                "other_certified": self.other_certified, "tol": self.tol, "pass": self.passed}

    def rows(self) -> list[dict[str, Any]]:
        return [{"lambda": lam, "residual": residual, "certified": residual <= self.tol}
                for lam, residual in zip(self.lambdas, self.residuals)]


@dataclass(frozen=True, eq=False)
class KernelPerturbation:
    """
    x with x(0) = 0 and x'_k = s_k d; 'trajectory' carries x on the grid of the perturbed solution.
    'direction' is None for blends of different directions.
    """
    trajectory: Trajectory
    magnitudes: np.ndarray
    direction: Optional[np.ndarray] = None

    @property
    def velocities(self) -> np.ndarray:
        return self.trajectory.velocities


@dataclass(frozen=True, eq=False)
class KernelPerturbationResult:
    """ A sampled perturbation, the hypotheses it was sampled under and, when they hold, the certificate. """
    perturbation: KernelPerturbation
    perturbed: Trajectory
    a1_zero: bool
    f_orthogonal: bool
    worst_f_kernel_component: float
    certificate: Optional[Certificate] = None
    notes: list[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.a1_zero and self.f_orthogonal

    @property
    def passed(self) -> bool:
        return self.hypotheses_hold and self.certificate is not None and self.certificate.is_solution

    def to_dict(self) -> dict[str, Any]:
        return {"direction": None if self.perturbation.direction is None else self.perturbation.direction.tolist(),
                "max_magnitude": float(np.max(self.perturbation.magnitudes)),
                "min_magnitude": float(np.min(self.perturbation.magnitudes)), "a1_zero": self.a1_zero,
                "f_orthogonal": self.f_orthogonal, "worst_f_kernel_component": self.worst_f_kernel_component,
                "certificate": None if self.certificate is None else self.certificate.to_dict(),
                "notes": self.notes, "pass": self.passed}

    def rows(self) -> list[dict[str, Any]]:
        return [{"t": float(t), "magnitude": float(s)}
                for t, s in zip(self.perturbed.times[1:], self.perturbation.magnitudes)]


def _oriented(direction: np.ndarray) -> np.ndarray:
    """ Unit vector with its largest-magnitude entry positive. """
    direction = direction / np.linalg.norm(direction)
    return -direction if direction[int(np.argmax(np.abs(direction)))] < 0.0 else direction


def kernel_direction(spec: ProblemSpec, shared: bool = False) -> Optional[np.ndarray]:
    """
    First kernel vector of A0, or with 'shared' of A0 + A1 (the common kernel of both PSD operators).
    Moving a solution's velocity along a shared direction keeps the step residuals unchanged when f has no
    component along it. None when the kernel is trivial.
    """
    operator = spec.A0.plus(spec.A1, 1.0) if shared else spec.A0
    basis = operator.spectrum().kernel_basis
    return _oriented(basis[0]) if basis.size else None


def _require_pair(spec: ProblemSpec, u: Trajectory, v: Trajectory) -> None:
    check_same_grid(u, v)
    if not np.array_equal(u.u0, v.u0):
        raise InvariantViolation("shared initial value", "both trajectories must start from the same u0")


def convexity_check(spec: ProblemSpec, u: Trajectory, v: Trajectory, lambdas: Sequence[float],
                    tol: float = DEFAULT_TOL) -> ConvexityReport:
    """
    Certify blends (1 - l) u + l v for every l in lambdas.
    Raises:
        InvariantViolation: A0 is not zero, or the trajectories do not share a grid and u0.
    """
    if not spec.A0.is_zero:
        raise InvariantViolation("convexity hypothesis", "A0 must vanish for the blend argument")
    _require_pair(spec, u, v)

    residuals = [certify(spec, u.blend(v, float(lam)), tol).max_residual for lam in lambdas]
    report = ConvexityReport(lambdas=[float(lam) for lam in lambdas], residuals=residuals,
                             base_certified=certify(spec, u, tol).is_solution,
                             other_certified=certify(spec, v, tol).is_solution, tol=tol)
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).info(
        f"Convexity over {len(residuals)} blend(s): worst residual {max(residuals, default=0.0):.3e}")
    return report


def kernel_set_membership(spec: ProblemSpec, u: Trajectory, v: Trajectory, tol: float = DEFAULT_TOL) -> bool:
    """ True iff v - u starts at 0, v's velocities lie in C(t_k) and A0 (v'_k - u'_k) vanishes within tol. """
    check_same_grid(u, v)
    if np.linalg.norm(v.u0 - u.u0) > tol:
        return False
    for k in range(1, u.steps + 1):
        velocity = v.velocities[k - 1]
        if not spec.C.at(float(u.times[k])).contains(velocity, tol):
            return False
        if np.linalg.norm(spec.A0.apply(velocity - u.velocities[k - 1])) > tol:
            return False
    return True


def _largest_step(feasible, base: np.ndarray, direction: np.ndarray, magnitude: float, tol: float,
                  iterations: int) -> float:
    """ Largest s in [0, magnitude] with base + s d feasible, by bisection. """
    if feasible.contains(base + magnitude * direction, tol):
        return magnitude
    lo, hi = 0.0, magnitude
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if feasible.contains(base + mid * direction, tol):
            lo = mid
        else:
            hi = mid
    return lo


def sample_kernel_perturbation(spec: ProblemSpec, u: Trajectory, direction: Sequence[float], magnitude: float,
                               tol: float = KERNEL_TOL, iterations: int = BISECTION_ITERATIONS,
                               certify_tol: float = DEFAULT_TOL) -> KernelPerturbationResult:
    """
    Build x with x'_k = s_k d, s_k the largest step in [0, magnitude] keeping u'_k + s_k d in C(t_k), and
    certify u + x when A1 = 0 and f(t_k) is orthogonal to ker A0.
    Raises:
        KernelViolation: d is not in ker A0.
        InvariantViolation: d is not a unit vector or magnitude is negative.
    """
    d = np.asarray(direction, dtype=float)
    if abs(float(np.linalg.norm(d)) - 1.0) > UNIT_TOL:
        raise InvariantViolation("unit direction", f"||d|| = {np.linalg.norm(d):.15g}, expected 1")
    if magnitude < 0.0:
        raise InvariantViolation("magnitude", f"magnitude must be >= 0, got {magnitude!r}")
    if np.linalg.norm(spec.A0.apply(d)) > tol:
        raise KernelViolation(f"direction {d.tolist()} leaves ker A0: ||A0 d|| = "
                              f"{np.linalg.norm(spec.A0.apply(d)):.3e}")

    magnitudes = np.array([_largest_step(spec.C.at(float(u.times[k])), u.velocities[k - 1], d, magnitude, tol,
                                         iterations) for k in range(1, u.steps + 1)])
    offsets = Trajectory.from_velocities(np.zeros(spec.dim), u.horizon, np.outer(magnitudes, d))
    perturbation = KernelPerturbation(trajectory=offsets, magnitudes=magnitudes, direction=d)
    perturbed = u.with_velocities(u.velocities + offsets.velocities)

    kernel_basis = spec.A0.spectrum().kernel_basis
    components = np.abs(spec.f.sample(u.times[1:]) @ kernel_basis.T) if kernel_basis.size else np.zeros(1)
    worst = float(np.max(components, initial=0.0))
    a1_zero, f_orthogonal = spec.A1.is_zero, worst <= tol

    notes = []
    if not a1_zero:
        notes.append("A1 is not zero")
    if not f_orthogonal:
        notes.append(f"f is not orthogonal to ker A0 (worst component {worst:.3e})")

    certificate = certify(spec, perturbed, certify_tol) if a1_zero and f_orthogonal else None
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).info(
        f"Kernel perturbation: steps in [{magnitudes.min():.3g}, {magnitudes.max():.3g}], "
        f"{'certified' if certificate and certificate.is_solution else '; '.join(notes) or 'not certified'}")
    return KernelPerturbationResult(perturbation=perturbation, perturbed=perturbed, a1_zero=a1_zero,
                                    f_orthogonal=f_orthogonal, worst_f_kernel_component=worst,
                                    certificate=certificate, notes=notes)


def blend_perturbations(first: KernelPerturbation, second: KernelPerturbation, weight: float) -> KernelPerturbation:
    """ (1 - weight) x + weight y for two perturbations of the same solution. """
    same = first.direction is not None and second.direction is not None and \
        np.array_equal(first.direction, second.direction)
    return KernelPerturbation(trajectory=first.trajectory.blend(second.trajectory, weight),
                              magnitudes=(1.0 - weight) * first.magnitudes + weight * second.magnitudes,
                              direction=first.direction if same else None)


def check_kernel_perturbation(spec: ProblemSpec, u: Trajectory, perturbation: KernelPerturbation,
                              tol: float = KERNEL_TOL) -> bool:
    """ x(0) = 0, ||A0 x'_k|| <= tol and u'_k + x'_k in C(t_k) within tol for every k. """
    x = perturbation.trajectory
    check_same_grid(u, x)
    if np.linalg.norm(x.u0) > tol:
        return False
    for k in range(1, u.steps + 1):
        velocity = x.velocities[k - 1]
        if np.linalg.norm(spec.A0.apply(velocity)) > tol:
            return False
        if not spec.C.at(float(u.times[k])).contains(u.velocities[k - 1] + velocity, tol):
            return False
    return True
