"""
Script:         time_functions.py
Author:         SweepVel Team

Description:
    Continuous maps t -> R^n used for the forcing term f, translation paths, moving radii and bounds and the
    continuity modulus g of a moving set. Closed forms (zero, constant, polynomial, sinusoid), sampled data
    with piecewise-linear interpolation, and piecewise compositions of those.
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (InvariantViolation, TimeFunctionKindType)

SWEEP_VEL_MODULE_NAME: str = "TimeFunctions"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Closed-form and sampled time functions"

ArrayLike = Union[float, np.ndarray, Sequence[float], Sequence[Sequence[float]]]


def _as_row(values: ArrayLike, what: str) -> np.ndarray:
    row = np.atleast_1d(np.asarray(values, dtype=float))
    if row.ndim != 1 or row.size == 0 or not np.all(np.isfinite(row)):
        raise InvariantViolation("time function", f"'{what}' must be a non-empty finite vector")
    return row


@dataclass(frozen=True, eq=False)
class TimeFunction:
    """
    A map t -> R^dim. Build through the class constructors or 'from_dict'.
    """
    kind: TimeFunctionKindType
    dim: int
    data: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def zero(cls, dim: int) -> "TimeFunction":
        return cls(TimeFunctionKindType.ZERO, int(dim))

    @classmethod
    def constant(cls, value: ArrayLike) -> "TimeFunction":
        value = _as_row(value, "value")
        return cls(TimeFunctionKindType.CONSTANT, value.size, {"value": value})

    @classmethod
    def polynomial(cls, coefficients: ArrayLike) -> "TimeFunction":
        """
        Args:
            coefficients: One row per degree, lowest first. A flat list is a scalar polynomial.
        """
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.ndim == 1:
            coefficients = coefficients.reshape(-1, 1)
        if coefficients.ndim != 2 or coefficients.shape[0] == 0 or not np.all(np.isfinite(coefficients)):
            raise InvariantViolation("time function", "'coefficients' must be a non-empty finite matrix")
        return cls(TimeFunctionKindType.POLYNOMIAL, coefficients.shape[1], {"coefficients": coefficients})

    @classmethod
    def sinusoid(cls, amplitude: ArrayLike, frequency: ArrayLike, phase: Optional[ArrayLike] = None,
                 offset: Optional[ArrayLike] = None) -> "TimeFunction":
        """ offset + amplitude * sin(frequency * t + phase), componentwise. """
        amplitude = _as_row(amplitude, "amplitude")
        dim = amplitude.size
        frequency = np.broadcast_to(_as_row(frequency, "frequency"), (dim,)).copy()
        phase = np.zeros(dim) if phase is None else np.broadcast_to(_as_row(phase, "phase"), (dim,)).copy()
        offset = np.zeros(dim) if offset is None else np.broadcast_to(_as_row(offset, "offset"), (dim,)).copy()
        return cls(TimeFunctionKindType.SINUSOID, dim,
                   {"amplitude": amplitude, "frequency": frequency, "phase": phase, "offset": offset})

    @classmethod
    def samples(cls, times: ArrayLike, values: ArrayLike) -> "TimeFunction":
        """ Piecewise-linear interpolation through (times[i], values[i]), constant beyond the ends. """
        times = _as_row(times, "times")
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.shape[0] != times.size or not np.all(np.isfinite(values)):
            raise InvariantViolation("time function", "'values' must hold one finite row per sample time")
        if np.any(np.diff(times) <= 0.0):
            raise InvariantViolation("time function", "sample 'times' must be strictly increasing")
        return cls(TimeFunctionKindType.SAMPLES, values.shape[1], {"times": times, "values": values})

    @classmethod
    def piecewise(cls, breakpoints: ArrayLike, pieces: Sequence["TimeFunction"]) -> "TimeFunction":
        """ pieces[i] applies on [breakpoints[i], breakpoints[i+1]); the first and last pieces extend outward. """
        breakpoints = _as_row(breakpoints, "breakpoints")
        pieces = tuple(pieces)
        if len(pieces) != breakpoints.size - 1 or not pieces:
            raise InvariantViolation("time function", "a piecewise function needs one piece per interval")
        if np.any(np.diff(breakpoints) <= 0.0):
            raise InvariantViolation("time function", "'breakpoints' must be strictly increasing")
        dims = {piece.dim for piece in pieces}
        if len(dims) != 1:
            raise InvariantViolation("time function", f"piece dimensions disagree: {sorted(dims)}")
        return cls(TimeFunctionKindType.PIECEWISE, dims.pop(), {"breakpoints": breakpoints, "pieces": pieces})

    def __call__(self, t: float) -> np.ndarray:
        t = float(t)
        kind = self.kind

        if kind is TimeFunctionKindType.ZERO:
            return np.zeros(self.dim)
        if kind is TimeFunctionKindType.CONSTANT:
            return self.data["value"].copy()
        if kind is TimeFunctionKindType.POLYNOMIAL:
            result = np.zeros(self.dim)
            for row in self.data["coefficients"][::-1]:
                result = result * t + row
            return result
        if kind is TimeFunctionKindType.SINUSOID:
            d = self.data
            return d["offset"] + d["amplitude"] * np.sin(d["frequency"] * t + d["phase"])
        if kind is TimeFunctionKindType.SAMPLES:
            times, values = self.data["times"], self.data["values"]
            return np.array([np.interp(t, times, values[:, i]) for i in range(self.dim)])

        breakpoints, pieces = self.data["breakpoints"], self.data["pieces"]
        index = int(np.clip(np.searchsorted(breakpoints, t, side="right") - 1, 0, len(pieces) - 1))
        return pieces[index](t)

    def scalar(self, t: float) -> float:
        """ Value of a one-dimensional function. """
        if self.dim != 1:
            raise ValueError(f"scalar evaluation of a {self.dim}-dimensional time function")
        return float(self(t)[0])

    def sample(self, times: ArrayLike) -> np.ndarray:
        """ Values on a grid, one row per time. """
        return np.array([self(t) for t in np.atleast_1d(np.asarray(times, dtype=float))]).reshape(-1, self.dim)

    def sup_norm(self, horizon: float, samples: int = 1001) -> float:
        """ ||f||_C0 on [0, horizon], estimated on a uniform grid. """
        if self.kind is TimeFunctionKindType.ZERO:
            return 0.0
        values = self.sample(np.linspace(0.0, horizon, samples))
        return float(np.max(np.linalg.norm(values, axis=1)))

    def to_dict(self) -> dict[str, Any]:
        """ Spec-file form, inverse of 'from_dict'. """
        kind = self.kind
        result: dict[str, Any] = {"kind": kind.value}

        if kind is TimeFunctionKindType.PIECEWISE:
            result["breakpoints"] = self.data["breakpoints"].tolist()
            result["pieces"] = [piece.to_dict() for piece in self.data["pieces"]]
        else:
            result.update({key: value.tolist() for key, value in self.data.items()})
        return result

    @classmethod
    def from_dict(cls, data: dict[str, Any], dim: Optional[int] = None) -> "TimeFunction":
        """
        Build from the spec-file form.
        Args:
            data: Tagged record, e.g. {"kind": "sinusoid", "amplitude": [0, 1], "frequency": [1, 1]}.
            dim: Expected dimension; required for 'zero'.
        """
        kind = TimeFunctionKindType.from_str(data.get("kind"))
        if kind is None:
            raise InvariantViolation("time function", f"unknown kind '{data.get('kind')}'")

        if kind is TimeFunctionKindType.ZERO:
            if dim is None:
                raise InvariantViolation("time function", "dimension of a 'zero' function is unknown")
            function = cls.zero(dim)
        elif kind is TimeFunctionKindType.CONSTANT:
            function = cls.constant(data["value"])
        elif kind is TimeFunctionKindType.POLYNOMIAL:
            function = cls.polynomial(data["coefficients"])
        elif kind is TimeFunctionKindType.SINUSOID:
            function = cls.sinusoid(amplitude=data["amplitude"], frequency=data["frequency"],
                                    phase=data.get("phase"), offset=data.get("offset"))
        elif kind is TimeFunctionKindType.SAMPLES:
            function = cls.samples(data["times"], data["values"])
        else:
            function = cls.piecewise(data["breakpoints"],
                                     [cls.from_dict(piece, dim) for piece in data["pieces"]])

        if dim is not None and function.dim != dim:
            raise InvariantViolation("time function", f"expected dimension {dim}, got {function.dim}")
        return function
