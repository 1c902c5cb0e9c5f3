"""
Script:         nonclosedness.py
Author:         SweepVel Team

Description:
    Scalar problem A0 = A1 = 0, f = 0, C(t) = R on [0, 1], where every absolutely continuous u with u(0) = 0
    solves. The functions x_k(t) = t^2 sin(1/t^2) on [1/k, 1], linear on [0, 1/k], are solutions converging in
    C0 (distance <= 2/k^2) to x(t) = t^2 sin(1/t^2), which is not of bounded variation, while their W^{1,1}
    norms grow without bound.

    Integrals over [1/k, 1] are taken after the substitution s = 1/t^2, which turns the oscillation into a
    slowly decaying one; Gauss-Legendre runs on panels split at the sign changes of the integrand.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (CoreLogger, CoreTelemetry, PackageGlobals)

SWEEP_VEL_MODULE_NAME: str = "NonClosedness"
SWEEP_VEL_MODULE_DESCRIPTION: str = "C0 versus W11 closedness demonstration"

HORIZON: float = 1.0
DEFAULT_QUAD_POINTS: int = 8
DEFAULT_K_LIST: tuple[int, ...] = (10, 100, 1000)
# Samples of (0, 1/k] used for the C0 distance
C0_SAMPLES: int = 20_001
# Panels integrated per vectorized chunk
PANEL_CHUNK: int = 65_536
NEWTON_STEPS: int = 4


def limit_function(t: np.ndarray) -> np.ndarray:
    """ x(t) = t^2 sin(1/t^2), x(0) = 0. """
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t == 0.0, 0.0, t ** 2 * np.sin(1.0 / np.where(t == 0.0, 1.0, t) ** 2))


def capped_function(k: int, t: np.ndarray) -> np.ndarray:
    """ x_k: linear on [0, 1/k], equal to x beyond. """
    t = np.asarray(t, dtype=float)
    return np.where(t <= 1.0 / k, (t / k) * math.sin(k * k), limit_function(t))


def _panel_integral(integrand, edges: np.ndarray, quad_points: int) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    total = 0.0
    for start in range(0, edges.size - 1, PANEL_CHUNK):
        lo = edges[start:start + PANEL_CHUNK]
        hi = edges[start + 1:start + PANEL_CHUNK + 1]
        lo = lo[:hi.size]
        half = 0.5 * (hi - lo)
        points = (0.5 * (hi + lo))[:, None] + half[:, None] * nodes[None, :]
        total += float(np.sum(half * (np.abs(integrand(points)) @ weights)))
    return total


def _tan_fixed_points(lo: float, hi: float) -> np.ndarray:
    """ Roots of tan s = s inside (lo, hi), Newton-refined from (m + 1/2) pi - 1 / ((m + 1/2) pi). """
    first = max(1, math.ceil(lo / math.pi - 0.5))
    guesses = (np.arange(first, math.floor(hi / math.pi - 0.5) + 2) + 0.5) * math.pi
    roots = guesses - 1.0 / guesses
    for _ in range(NEWTON_STEPS):
        roots = roots - (np.sin(roots) - roots * np.cos(roots)) / (roots * np.sin(roots))
    return roots[(roots > lo) & (roots < hi)]


def _edges(lo: float, hi: float, inner: np.ndarray) -> np.ndarray:
    return np.concatenate([[lo], inner, [hi]])


def variation_integral(k: int, quad_points: int = DEFAULT_QUAD_POINTS) -> float:
    """
    int_0^1 |x_k'| = |sin k^2| / k^2 + int_1^{k^2} |sin s / s^2 - cos s / s| ds.
    """
    lo, hi = 1.0 / HORIZON ** 2, float(k * k)
    integral = _panel_integral(lambda s: np.sin(s) / s ** 2 - np.cos(s) / s,
                               _edges(lo, hi, _tan_fixed_points(lo, hi)), quad_points)
    return abs(math.sin(k * k)) / (k * k) + integral


def l1_integral(k: int, quad_points: int = DEFAULT_QUAD_POINTS) -> float:
    """
    int_0^1 |x_k| = |sin k^2| / (2 k^3) + 1/2 int_1^{k^2} s^{-5/2} |sin s| ds.
    """
    lo, hi = 1.0 / HORIZON ** 2, float(k * k)
    multiples = np.arange(math.ceil(lo / math.pi), math.floor(hi / math.pi) + 1) * math.pi
    inner = multiples[(multiples > lo) & (multiples < hi)]
    integral = _panel_integral(lambda s: s ** -2.5 * np.sin(s), _edges(lo, hi, inner), quad_points)
    return abs(math.sin(k * k)) / (2.0 * k ** 3) + 0.5 * integral


def c0_gap(k: int, samples: int = C0_SAMPLES) -> float:
    """ Sampled sup over (0, 1/k] of |x_k - x|; the two agree beyond 1/k. """
    t = np.linspace(0.0, 1.0 / k, samples)[1:]
    return float(np.max(np.abs(capped_function(k, t) - limit_function(t))))


@dataclass(frozen=True)
class NonClosednessRow:
    k: int
    c0_distance: float
    c0_bound: float
    variation: float
    l1_norm: float
    w11_norm: float

    @property
    def within_bound(self) -> bool:
        return self.c0_distance <= self.c0_bound


@dataclass(frozen=True)
class NonClosednessReport:
    rows_: list[NonClosednessRow]
    quad_points: int
    limit_absolutely_continuous: bool = False
    notes: list[str] = field(default_factory=lambda: ["x(t) = t^2 sin(1/t^2) is not of bounded variation, "
                                                      "hence not absolutely continuous"])

    @property
    def w11_strictly_increasing(self) -> bool:
        norms = [row.w11_norm for row in self.rows_]
        return all(b > a for a, b in zip(norms, norms[1:]))

    @property
    def c0_within_bounds(self) -> bool:
        return all(row.within_bound for row in self.rows_)

    @property
    def passed(self) -> bool:
        return self.c0_within_bounds and self.w11_strictly_increasing

    def rows(self) -> list[dict[str, Any]]:
        return [{"k": row.k, "c0_distance": row.c0_distance, "c0_bound": row.c0_bound, "variation": row.variation,
                 "l1_norm": row.l1_norm, "w11_norm": row.w11_norm} for row in self.rows_]

    def to_dict(self) -> dict[str, Any]:
        return {"T": HORIZON, "quad_points": self.quad_points, "rows": self.rows(),
                "c0_within_bounds": self.c0_within_bounds, "w11_strictly_increasing": self.w11_strictly_increasing,
                "limit_absolutely_continuous": self.limit_absolutely_continuous, "notes": self.notes,
                "pass": self.passed}


def _row(k: int, quad_points: int) -> NonClosednessRow:
    variation = variation_integral(k, quad_points)
    l1_norm = l1_integral(k, quad_points)
    return NonClosednessRow(k=k, c0_distance=c0_gap(k), c0_bound=2.0 / k ** 2, variation=variation,
                            l1_norm=l1_norm, w11_norm=l1_norm + variation)


def nonclosedness_demo(k_list: Sequence[int] = DEFAULT_K_LIST, quad_points: int = DEFAULT_QUAD_POINTS,
                       threads: Optional[int] = None) -> NonClosednessReport:
    """
    Tabulate C0 distances and W^{1,1} norms of x_k for each k, in the given order.
    """
    ks = [int(k) for k in k_list]
    if not ks or min(ks) < 1:
        raise ValueError("k_list must hold positive integers")
    if quad_points < 1:
        raise ValueError("quad_points must be positive")

    workers = max(1, min(threads or PackageGlobals.thread_cap(), len(ks)))
    with CoreTelemetry.span("analysis.nonclosedness", k_count=len(ks), quad_points=quad_points):
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(lambda k: _row(k, quad_points), ks))

    report = NonClosednessReport(rows_=rows, quad_points=quad_points)
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).info(
        "Non-closedness: " + ", ".join(f"k={row.k}: C0 {row.c0_distance:.2e}, W11 {row.w11_norm:.4f}"
                                       for row in rows))
    return report
