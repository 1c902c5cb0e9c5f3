"""
Script:         convex_sets.py
Author:         SweepVel Team

Description:
    Projectable nonempty closed convex sets and their time-parametrized families C(t).
    Every variant projects in closed form except intersections, which run Dykstra's alternating projections
    over the members' exact projections. Normal-cone membership is decided through the projection identity
    w in N_S(x) <=> x = P_S(x + w), so it works for every variant alike.
"""

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, ClassVar, Optional, Sequence, Union

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (ConvexSetVariantType, CoreLogger, CoreTelemetry, DykstraNoConverge, InvariantViolation,
                       MovingFamilyType, TimeFunction, UnsupportedFamily)

SWEEP_VEL_MODULE_NAME: str = "ConvexSets"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Convex sets, projections and moving families"

# Orthonormality acceptance for affine subspace bases
ORTHONORMAL_TOL: float = 1e-12
# Intersection witnesses must lie in every member within this distance
WITNESS_TOL: float = 1e-9
# Grid slack when checking that a time lies in [0, T]
TIME_SLACK: float = 1e-12
# Allowed excess of d_H over |g(s) - g(t)| in the continuity audit
MODULUS_AUDIT_TOL: float = 1e-8

ArrayLike = Union[np.ndarray, Sequence[float]]


def _vector(values: ArrayLike, what: str, dim: Optional[int] = None) -> np.ndarray:
    vector = np.atleast_1d(np.array(values, dtype=float))
    if vector.ndim != 1 or vector.size == 0 or not np.all(np.isfinite(vector)):
        raise InvariantViolation("set well-formedness", f"'{what}' must be a non-empty finite vector")
    if dim is not None and vector.size != dim:
        raise InvariantViolation("set well-formedness", f"'{what}' has dimension {vector.size}, expected {dim}")
    vector.setflags(write=False)
    return vector


@dataclass(frozen=True)
class ProjectionConfig:
    """ Budget for iterative projections (Dykstra); closed-form variants ignore it. """
    tol: float = 1e-10
    max_iter: int = 100_000

    @classmethod
    def from_configuration(cls, data: Optional[dict[str, Any]]) -> "ProjectionConfig":
        data = data or {}
        return cls(tol=float(data.get("tol", cls.tol)), max_iter=int(data.get("max_iter", cls.max_iter)))


DEFAULT_PROJECTION = ProjectionConfig()


class ConvexSet(ABC):
    """
    A nonempty closed convex subset of R^n with an exact (or Dykstra-exact) Euclidean projection.
    """
    variant: ClassVar[ConvexSetVariantType]

    @property
    @abstractmethod
    def dim(self) -> int:
        """ Ambient dimension. """

    @abstractmethod
    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        """ Variant projection on an already validated vector. """

    @abstractmethod
    def translated(self, shift: np.ndarray) -> "ConvexSet":
        """ The set S + shift. """

    @abstractmethod
    def _params(self) -> dict[str, Any]:
        """ Variant fields in spec-file form. """

    def norm_bound(self) -> Optional[float]:
        """ sup ||x|| over the set, None when the set is unbounded. """
        return None

    @property
    def is_bounded(self) -> bool:
        return self.norm_bound() is not None

    def project(self, x: ArrayLike, cfg: ProjectionConfig = DEFAULT_PROJECTION) -> np.ndarray:
        """
        Euclidean projection P_S(x).
        Raises:
            ValueError: On dimension mismatch.
            DykstraNoConverge: Intersection projection did not settle within cfg.max_iter sweeps.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"dimension mismatch: set lives in R^{self.dim}, vector has shape {x.shape}")
        return self._project(x, cfg)

    def distance(self, x: ArrayLike, cfg: ProjectionConfig = DEFAULT_PROJECTION) -> float:
        x = np.asarray(x, dtype=float)
        return float(np.linalg.norm(x - self.project(x, cfg)))

    def contains(self, x: ArrayLike, tol: float, cfg: ProjectionConfig = DEFAULT_PROJECTION) -> bool:
        """ True iff ||x - P_S(x)|| <= tol. """
        return self.distance(x, cfg) <= tol

    def normal_cone_contains(self, x: ArrayLike, w: ArrayLike, tol: float,
                             cfg: ProjectionConfig = DEFAULT_PROJECTION) -> bool:
        """ True iff x lies in S and ||P_S(x + w) - x|| <= tol. """
        x = np.asarray(x, dtype=float)
        if not self.contains(x, tol, cfg):
            return False
        return float(np.linalg.norm(self.project(x + np.asarray(w, dtype=float), cfg) - x)) <= tol

    def to_dict(self) -> dict[str, Any]:
        return {"variant": self.variant.value, **self._params()}

    @staticmethod
    def from_dict(data: dict[str, Any], dim: Optional[int] = None) -> "ConvexSet":
        """
        Build a set from its tagged record, e.g. {"variant": "ball", "center": [0, 0], "radius": 1}.
        """
        variant = ConvexSetVariantType.from_str(data.get("variant"))
        if variant is None:
            raise InvariantViolation("set well-formedness", f"unknown set variant '{data.get('variant')}'")

        if variant is ConvexSetVariantType.WHOLE_SPACE:
            result = WholeSpace(int(data.get("dim", dim or 0)))
        elif variant is ConvexSetVariantType.SINGLETON:
            result = Singleton(data["point"])
        elif variant is ConvexSetVariantType.BALL:
            result = Ball(data["center"], data["radius"])
        elif variant is ConvexSetVariantType.BOX:
            result = Box(data["lo"], data["hi"])
        elif variant is ConvexSetVariantType.HALFSPACE:
            result = Halfspace(data["normal"], data["offset"])
        elif variant is ConvexSetVariantType.HYPERPLANE:
            result = Hyperplane(data["normal"], data["offset"])
        elif variant is ConvexSetVariantType.AFFINE_SUBSPACE:
            result = AffineSubspace(data["point"], data.get("directions", []))
        else:
            members = [ConvexSet.from_dict(member, dim) for member in data["members"]]
            result = Intersection(members, data["witness"])

        if dim is not None and result.dim != dim:
            raise InvariantViolation("set well-formedness",
                                     f"{variant.value} lives in R^{result.dim}, expected R^{dim}")
        return result


@dataclass(frozen=True, eq=False)
class WholeSpace(ConvexSet):
    """ R^n itself; every vector is feasible. """
    size: int
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.WHOLE_SPACE

    def __post_init__(self):
        if self.size < 1:
            raise InvariantViolation("set well-formedness", "whole space needs a positive dimension")

    @property
    def dim(self) -> int:
        return self.size

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        return x.copy()

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return self

    def _params(self) -> dict[str, Any]:
        return {"dim": self.size}


@dataclass(frozen=True, eq=False)
class Singleton(ConvexSet):
    point: np.ndarray
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.SINGLETON

    def __post_init__(self):
        object.__setattr__(self, "point", _vector(self.point, "point"))

    @property
    def dim(self) -> int:
        return self.point.size

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        return self.point.copy()

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return Singleton(self.point + shift)

    def norm_bound(self) -> Optional[float]:
        return float(np.linalg.norm(self.point))

    def _params(self) -> dict[str, Any]:
        return {"point": self.point.tolist()}


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    center: np.ndarray
    radius: float
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.BALL

    def __post_init__(self):
        object.__setattr__(self, "center", _vector(self.center, "center"))
        object.__setattr__(self, "radius", float(self.radius))
        if not np.isfinite(self.radius) or self.radius < 0.0:
            raise InvariantViolation("set well-formedness", f"ball radius must be >= 0, got {self.radius!r}")

    @property
    def dim(self) -> int:
        return self.center.size

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        offset = x - self.center
        length = float(np.linalg.norm(offset))
        if length <= self.radius:
            return x.copy()
        return self.center + offset * (self.radius / length)

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return Ball(self.center + shift, self.radius)

    def norm_bound(self) -> Optional[float]:
        return float(np.linalg.norm(self.center)) + self.radius

    def _params(self) -> dict[str, Any]:
        return {"center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    lo: np.ndarray
    hi: np.ndarray
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.BOX

    def __post_init__(self):
        lo = _vector(self.lo, "lo")
        hi = _vector(self.hi, "hi", dim=lo.size)
        if np.any(lo > hi):
            i = int(np.argmax(lo > hi))
            raise InvariantViolation("set well-formedness", f"box lo[{i}]={lo[i]!r} exceeds hi[{i}]={hi[i]!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return self.lo.size

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        return np.clip(x, self.lo, self.hi)

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return Box(self.lo + shift, self.hi + shift)

    def norm_bound(self) -> Optional[float]:
        return float(np.linalg.norm(np.maximum(np.abs(self.lo), np.abs(self.hi))))

    def _params(self) -> dict[str, Any]:
        return {"lo": self.lo.tolist(), "hi": self.hi.tolist()}


@dataclass(frozen=True, eq=False)
class Halfspace(ConvexSet):
    """ {x : <normal, x> <= offset} """
    normal: np.ndarray
    offset: float
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.HALFSPACE

    def __post_init__(self):
        normal = _vector(self.normal, "normal")
        if not np.any(normal):
            raise InvariantViolation("set well-formedness", f"{self.variant.value} normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def dim(self) -> int:
        return self.normal.size

    def _excess(self, x: np.ndarray) -> float:
        return float(self.normal @ x) - self.offset

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        excess = max(0.0, self._excess(x))
        return x - (excess / float(self.normal @ self.normal)) * self.normal

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return type(self)(self.normal, self.offset + float(self.normal @ shift))

    def _params(self) -> dict[str, Any]:
        return {"normal": self.normal.tolist(), "offset": self.offset}


@dataclass(frozen=True, eq=False)
class Hyperplane(Halfspace):
    """ {x : <normal, x> = offset} """
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.HYPERPLANE

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        return x - (self._excess(x) / float(self.normal @ self.normal)) * self.normal


@dataclass(frozen=True, eq=False)
class AffineSubspace(ConvexSet):
    """ point + span(directions); 'directions' holds one orthonormal basis vector per row. """
    point: np.ndarray
    directions: np.ndarray
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.AFFINE_SUBSPACE

    def __post_init__(self):
        point = _vector(self.point, "point")
        directions = np.array(self.directions, dtype=float).reshape(-1, point.size)
        gram = directions @ directions.T
        if not np.all(np.isfinite(directions)) or \
                np.max(np.abs(gram - np.eye(directions.shape[0])), initial=0.0) > ORTHONORMAL_TOL:
            raise InvariantViolation("set well-formedness", "affine subspace directions must be orthonormal")
        directions.setflags(write=False)
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "directions", directions)

    @property
    def dim(self) -> int:
        return self.point.size

    def complement_part(self, x: np.ndarray) -> np.ndarray:
        """ Component of x orthogonal to the direction space: (I - D^T D) x. """
        return x - self.directions.T @ (self.directions @ x)

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        return x - self.complement_part(x - self.point)

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return AffineSubspace(self.point + shift, self.directions)

    def norm_bound(self) -> Optional[float]:
        if self.directions.shape[0] == 0:
            return float(np.linalg.norm(self.point))
        return None

    def _params(self) -> dict[str, Any]:
        return {"point": self.point.tolist(), "directions": self.directions.tolist()}


@dataclass(frozen=True, eq=False)
class Intersection(ConvexSet):
    """
    Intersection of member sets, projected with Dykstra's algorithm. 'witness' is a common point proving the
    intersection nonempty.
    """
    members: tuple
    witness: np.ndarray
    variant: ClassVar[ConvexSetVariantType] = ConvexSetVariantType.INTERSECTION

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise InvariantViolation("set well-formedness", "intersection needs at least one member")
        witness = _vector(self.witness, "witness", dim=members[0].dim)
        for index, member in enumerate(members):
            if member.dim != witness.size:
                raise InvariantViolation("set well-formedness", f"intersection member {index} lives in "
                                                                f"R^{member.dim}, expected R^{witness.size}")
            if not member.contains(witness, WITNESS_TOL):
                raise InvariantViolation("set well-formedness",
                                         f"witness {witness.tolist()} is not in intersection member {index}")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "witness", witness)

    @property
    def dim(self) -> int:
        return self.witness.size

    def _project(self, x: np.ndarray, cfg: ProjectionConfig) -> np.ndarray:
        current = x.copy()
        increments = [np.zeros_like(x) for _ in self.members]
        change = float("inf")

        for sweep in range(1, cfg.max_iter + 1):
            previous = current
            drift = 0.0
            for index, member in enumerate(self.members):
                shifted = current + increments[index]
                current = member.project(shifted, cfg)
                increment = shifted - current
                drift += float(np.linalg.norm(increment - increments[index]))
                increments[index] = increment

            # The iterate can stall for whole sweeps while the corrections still move
            change = float(np.linalg.norm(current - previous)) + drift
            if change <= cfg.tol:
                CoreTelemetry.count("dykstra.sweeps", sweep, description="Dykstra sweeps over intersections")
                return current

        CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).debug(
            f"Dykstra stalled at change {change:.3e} after {cfg.max_iter} sweeps")
        raise DykstraNoConverge(iterations=cfg.max_iter, residual=change)

    def translated(self, shift: np.ndarray) -> "ConvexSet":
        return Intersection(tuple(member.translated(shift) for member in self.members), self.witness + shift)

    def norm_bound(self) -> Optional[float]:
        bounds = [bound for bound in (member.norm_bound() for member in self.members) if bound is not None]
        return min(bounds) if bounds else None

    def _params(self) -> dict[str, Any]:
        return {"members": [member.to_dict() for member in self.members], "witness": self.witness.tolist()}


def translation_distance(base: ConvexSet, shift: ArrayLike) -> float:
    """
    Exact d_H(S, S + shift).
    Raises:
        UnsupportedFamily: For unbounded intersections.
    """
    shift = np.asarray(shift, dtype=float)
    if isinstance(base, WholeSpace):
        return 0.0
    if isinstance(base, Halfspace):
        return abs(float(base.normal @ shift)) / float(np.linalg.norm(base.normal))
    if isinstance(base, AffineSubspace):
        return float(np.linalg.norm(base.complement_part(shift)))
    if base.is_bounded:
        return float(np.linalg.norm(shift))
    raise UnsupportedFamily(f"no exact Hausdorff distance for translates of an unbounded {base.variant.value}")


def box_hausdorff_distance(first: Box, second: Box) -> float:
    """
    Exact Euclidean Hausdorff distance between two boxes. Per coordinate the excess of one box over the other
    is e_i = max(0, lo2_i - lo1_i, hi1_i - hi2_i), and a single corner realizes every e_i at once, so

        d_H = max(||e(first, second)||_2, ||e(second, first)||_2) <= ||max(|lo1 - lo2|, |hi1 - hi2|)||_2.

    The largest single corner-coordinate movement, max_i max(|lo1_i - lo2_i|, |hi1_i - hi2_i|), is only a lower
    bound of this in dimension > 1.
    """
    forward = np.maximum.reduce([np.zeros(first.dim), second.lo - first.lo, first.hi - second.hi])
    backward = np.maximum.reduce([np.zeros(first.dim), first.lo - second.lo, second.hi - first.hi])
    return float(max(np.linalg.norm(forward), np.linalg.norm(backward)))


@dataclass(frozen=True, eq=False)
class MovingSet:
    """
    A time-parametrized family C(t) on [0, horizon] with optional continuity modulus g and a user-declared
    Lipschitz-like constant beta.
    """
    family: MovingFamilyType
    dim: int
    base: Optional[ConvexSet] = None
    path: Optional[TimeFunction] = None
    center: Optional[TimeFunction] = None
    radius: Optional[TimeFunction] = None
    lo: Optional[TimeFunction] = None
    hi: Optional[TimeFunction] = None
    modulus: Optional[TimeFunction] = None
    lipschitz_beta: Optional[float] = None
    horizon: Optional[float] = None
    _keys: tuple = field(init=False, repr=False, default=())

    def __post_init__(self):
        if self.modulus is not None and self.modulus.dim != 1:
            raise InvariantViolation("set well-formedness", "continuity modulus g must be scalar")
        if self.lipschitz_beta is not None and not self.lipschitz_beta > 0.0:
            raise InvariantViolation("set well-formedness", "lipschitz beta must be positive")
        checks = {MovingFamilyType.STATIC: ("base",), MovingFamilyType.TRANSLATE: ("base", "path"),
                  MovingFamilyType.BALL_PATH: ("center", "radius"), MovingFamilyType.BOX_PATH: ("lo", "hi")}
        for key in checks[self.family]:
            value = getattr(self, key)
            if value is None:
                raise InvariantViolation("set well-formedness", f"{self.family.value} family needs '{key}'")
            expected = 1 if key == "radius" else self.dim
            if value.dim != expected:
                raise InvariantViolation("set well-formedness",
                                         f"'{key}' has dimension {value.dim}, expected {expected}")
        object.__setattr__(self, "_keys", checks[self.family])

    @classmethod
    def static(cls, base: ConvexSet, **kwargs: Any) -> "MovingSet":
        return cls(MovingFamilyType.STATIC, base.dim, base=base, **kwargs)

    @classmethod
    def translate(cls, base: ConvexSet, path: TimeFunction, **kwargs: Any) -> "MovingSet":
        return cls(MovingFamilyType.TRANSLATE, base.dim, base=base, path=path, **kwargs)

    @classmethod
    def ball_path(cls, center: TimeFunction, radius: TimeFunction, **kwargs: Any) -> "MovingSet":
        return cls(MovingFamilyType.BALL_PATH, center.dim, center=center, radius=radius, **kwargs)

    @classmethod
    def box_path(cls, lo: TimeFunction, hi: TimeFunction, **kwargs: Any) -> "MovingSet":
        return cls(MovingFamilyType.BOX_PATH, lo.dim, lo=lo, hi=hi, **kwargs)

    def with_horizon(self, horizon: float) -> "MovingSet":
        """ Same family restricted to [0, horizon]. """
        values = {name: getattr(self, name) for name in ("base", "path", "center", "radius", "lo", "hi",
                                                          "modulus", "lipschitz_beta")}
        return MovingSet(self.family, self.dim, horizon=float(horizon), **values)

    def _check_time(self, t: float) -> float:
        t = float(t)
        if self.horizon is not None:
            slack = TIME_SLACK * max(1.0, self.horizon)
            if t < -slack or t > self.horizon + slack:
                raise ValueError(f"time {t!r} outside [0, {self.horizon!r}]")
        return t

    def at(self, t: float) -> ConvexSet:
        """ The concrete set C(t). """
        t = self._check_time(t)
        family = self.family

        if family is MovingFamilyType.STATIC:
            return self.base
        if family is MovingFamilyType.TRANSLATE:
            return self.base.translated(self.path(t))
        if family is MovingFamilyType.BALL_PATH:
            return Ball(self.center(t), self.radius.scalar(t))
        return Box(self.lo(t), self.hi(t))

    def hausdorff_distance(self, s: float, t: float) -> float:
        """
        Exact d_H(C(s), C(t)).
        Raises:
            UnsupportedFamily: Translates of unbounded intersections.
        """
        s, t = self._check_time(s), self._check_time(t)
        family = self.family

        if family is MovingFamilyType.STATIC:
            return 0.0
        if family is MovingFamilyType.TRANSLATE:
            return translation_distance(self.base, self.path(t) - self.path(s))
        if family is MovingFamilyType.BALL_PATH:
            return float(np.linalg.norm(self.center(s) - self.center(t))) + \
                abs(self.radius.scalar(s) - self.radius.scalar(t))
        return box_hausdorff_distance(self.at(s), self.at(t))

    def modulus_gap(self, s: float, t: float) -> float:
        """ |g(s) - g(t)|, zero when g is undeclared and the family is static. """
        if self.modulus is None:
            return 0.0
        return abs(self.modulus.scalar(s) - self.modulus.scalar(t))

    def max_modulus_drift(self, horizon: Optional[float] = None, samples: int = 1001) -> float:
        """ max |g(0) - g(s)| over s in [0, horizon]. """
        if self.modulus is None:
            raise ValueError("continuity modulus g is not declared")
        horizon = self.horizon if horizon is None else horizon
        values = self.modulus.sample(np.linspace(0.0, horizon, samples))[:, 0]
        return float(np.max(np.abs(values - values[0])))

    def audit_continuity_modulus(self, horizon: Optional[float] = None, samples: int = 101) -> float:
        """
        Worst excess of d_H(C(s), C(t)) over |g(s) - g(t)| on a uniform grid; <= 1e-8 means g is a valid modulus.
        Raises:
            ValueError: g undeclared or no horizon available.
        """
        if self.modulus is None:
            raise ValueError("continuity modulus g is not declared")
        horizon = self.horizon if horizon is None else horizon
        if horizon is None:
            raise ValueError("no horizon to audit the continuity modulus on")

        grid = np.linspace(0.0, horizon, samples)
        worst = -np.inf
        for s, t in itertools.combinations(grid, 2):
            worst = max(worst, self.hausdorff_distance(s, t) - self.modulus_gap(s, t))
        CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).debug(
            f"Continuity modulus audit on {samples} points: worst excess {worst:.3e}")
        return float(max(worst, 0.0))

    def satisfies_modulus(self, horizon: Optional[float] = None, samples: int = 101,
                          tol: float = MODULUS_AUDIT_TOL) -> bool:
        return self.audit_continuity_modulus(horizon, samples) <= tol

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {"family": self.family.value}
        for key in self._keys:
            value = getattr(self, key)
            result["set" if key == "base" else key] = value.to_dict()
        if self.modulus is not None:
            result["g"] = self.modulus.to_dict()
        if self.lipschitz_beta is not None:
            result["beta"] = self.lipschitz_beta
        return result

    @classmethod
    def from_dict(cls, data: dict[str, Any], dim: int, horizon: Optional[float] = None) -> "MovingSet":
        """
        Build from the spec-file form, e.g. {"family": "translate", "set": {...}, "path": {...}, "g": {...}}.
        """
        family = MovingFamilyType.from_str(data.get("family"))
        if family is None:
            raise InvariantViolation("set well-formedness", f"unknown moving family '{data.get('family')}'")

        extras: dict[str, Any] = {"horizon": horizon, "lipschitz_beta": data.get("beta")}
        if "g" in data:
            extras["modulus"] = TimeFunction.from_dict(data["g"], dim=1)

        if family is MovingFamilyType.STATIC:
            return cls.static(ConvexSet.from_dict(data["set"], dim), **extras)
        if family is MovingFamilyType.TRANSLATE:
            return cls.translate(ConvexSet.from_dict(data["set"], dim), TimeFunction.from_dict(data["path"], dim),
                                 **extras)
        if family is MovingFamilyType.BALL_PATH:
            return cls.ball_path(TimeFunction.from_dict(data["center"], dim),
                                 TimeFunction.from_dict(data["radius"], 1), **extras)
        return cls.box_path(TimeFunction.from_dict(data["lo"], dim), TimeFunction.from_dict(data["hi"], dim),
                            **extras)


def project(s: ConvexSet, x: ArrayLike, cfg: ProjectionConfig = DEFAULT_PROJECTION) -> np.ndarray:
    return s.project(x, cfg)


def contains(s: ConvexSet, x: ArrayLike, tol: float, cfg: ProjectionConfig = DEFAULT_PROJECTION) -> bool:
    return s.contains(x, tol, cfg)


def normal_cone_contains(s: ConvexSet, x: ArrayLike, w: ArrayLike, tol: float,
                         cfg: ProjectionConfig = DEFAULT_PROJECTION) -> bool:
    return s.normal_cone_contains(x, w, tol, cfg)


def at(moving: MovingSet, t: float) -> ConvexSet:
    return moving.at(t)


def hausdorff_distance(moving: MovingSet, s: float, t: float) -> float:
    return moving.hausdorff_distance(s, t)
