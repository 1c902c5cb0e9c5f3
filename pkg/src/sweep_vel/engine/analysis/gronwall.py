"""
Script:         gronwall.py
Author:         SweepVel Team

Description:
    Gronwall-type integral inequality: if f(t) <= a + b * int_0^t f then int_0^t f <= (a / b)(exp(b t) - 1).
    'gronwall_bound' evaluates the conclusion; 'check_gronwall' audits sampled data against both the
    hypothesis and the conclusion using a cumulative trapezoid integral.
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Sequence, Union

# Third-party
import numpy as np

SWEEP_VEL_MODULE_NAME: str = "Gronwall"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Gronwall lemma bound and sampled audit"

# Pointwise tolerance is this factor times (1 + |a|)
AUDIT_TOL_FACTOR: float = 1e-6


def gronwall_bound(a: float, b: float, t: float) -> float:
    """
    (a / b)(exp(b t) - 1).
    Raises:
        ValueError: b == 0.
    """
    if b == 0.0:
        raise ValueError("gronwall_bound requires b != 0")
    return (a / b) * math.expm1(b * t)


def cumulative_trapezoid(samples: np.ndarray, dt: float) -> np.ndarray:
    """ Running trapezoid integral, 0 at the first sample. """
    integral = np.zeros_like(samples, dtype=float)
    integral[1:] = np.cumsum(0.5 * dt * (samples[1:] + samples[:-1]))
    return integral


@dataclass(frozen=True)
class GronwallCheck:
    """ Outcome of 'check_gronwall'; excesses are worst-case (negative means slack). """
    hypothesis_holds: bool
    conclusion_holds: bool
    max_hypothesis_excess: float
    max_conclusion_excess: float
    final_integral: float
    final_bound: float
    tol: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def check_gronwall(samples: Union[np.ndarray, Sequence[float]], a: float, b: float, dt: float) -> GronwallCheck:
    """
    Audit uniform samples f(t_i), t_i = i * dt.
    Args:
        samples: Sampled f on the uniform grid.
        a, b: Lemma constants; b == 0 uses the limit bound a * t.
        dt: Grid spacing.
    """
    f = np.asarray(samples, dtype=float)
    times = dt * np.arange(f.size)
    integral = cumulative_trapezoid(f, dt)
    tol = AUDIT_TOL_FACTOR * (1.0 + abs(a))

    if b == 0.0:
        bound = a * times
    else:
        bound = (a / b) * np.expm1(b * times)

    hypothesis_excess = float(np.max(f - (a + b * integral)))
    conclusion_excess = float(np.max(integral - bound))
    return GronwallCheck(hypothesis_holds=hypothesis_excess <= tol, conclusion_holds=conclusion_excess <= tol,
                         max_hypothesis_excess=hypothesis_excess, max_conclusion_excess=conclusion_excess,
                         final_integral=float(integral[-1]), final_bound=float(bound[-1]), tol=tol)


def equality_case(a: float, b: float, horizon: float = 1.0, samples: int = 2001) -> dict[str, Any]:
    """
    Saturating input f(t) = a exp(b t): returns the audit with the gap between the quadrature integral and the
    bound at the horizon.
    """
    times = np.linspace(0.0, horizon, samples)
    check = check_gronwall(a * np.exp(b * times), a, b, times[1] - times[0])
    bound = gronwall_bound(a, b, horizon)
    return {"a": a, "b": b, "T": horizon, "samples": samples, "integral": check.final_integral, "bound": bound,
            "gap": check.final_integral - bound, "check": check.to_dict()}
