"""
Script:         local_types.py
Author:         SweepVel Team

Description:
    Single point module defining the common types, enumerations, exceptions and simple classes
    shared across the core, the numerical engine and the command modules.
"""
import os
import re
import sys
from enum import Enum, IntFlag, auto
from types import ModuleType
from typing import Any, ClassVar, NamedTuple, Optional, Union

SWEEP_VEL_MODULE_NAME: str = "LocalTypes"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Project shared types"


class _LookupEnum(Enum):
    """ Enum base adding a forgiving string lookup on member names and values. """

    @classmethod
    def from_str(cls, value: Optional[str], default: Optional[Union[str, Enum]] = None):
        """
        Safely convert a string to an enum member.
        Args:
            value (str): Member name or value, case-insensitive, '-' and '_' are interchangeable.
            default: Fallback member (or its name) returned when conversion fails.
        Returns:
            The matching member, the fallback or None.
        """
        default_enum = default
        if isinstance(default, str):
            default_enum = cls.from_str(default)

        if not isinstance(value, str):
            return default_enum

        normalized = value.strip().replace("-", "_").upper()
        for member in cls:
            member_value = str(member.value).replace("-", "_").upper()
            if normalized in (member.name, member_value):
                return member
        return default_enum


class SweepVelModuleType(Enum):
    """ Enumeration of known SweepVel module types. """
    UNKNOWN = 0
    CORE = 1
    COMMON = 2
    COMMAND = 3
    ENGINE = 4


class SweepVelCommandType(_LookupEnum):
    """ Enumeration of known SweepVel command types. """
    UNKNOWN = 0
    SOLVER = 1
    VERIFICATION = 2
    DEMO = 3


class LogHandlersType(IntFlag):
    """
    Bitwise-capable enumeration of supported log handler types.
    Allows combining multiple handlers using bitwise OR.
    """
    NO_HANDLERS = 0
    CONSOLE_HANDLER = auto()
    FILE_HANDLER = auto()
    MEMORY_HANDLER = auto()


class ModuleInfoType(NamedTuple):
    """ Define a named tuple type for SweepVel registered modules. """
    name: str
    description: Optional[str] = None
    class_name: Optional[str] = None
    class_instance: Optional[Any] = None
    class_interface_name: Optional[str] = None
    sweep_vel_module_type: SweepVelModuleType = SweepVelModuleType.UNKNOWN
    python_module_type: Optional[ModuleType] = None
    file_name: Optional[str] = None
    version: Optional[str] = None
    hidden: bool = False  # Applicable for commands
    command_type: SweepVelCommandType = SweepVelCommandType.UNKNOWN
    metadata: Optional[dict[str, Any]] = None


class SensitivityModeType(_LookupEnum):
    """ Coercivity regime under which the Lipschitz dependence on the initial value is checked. """
    A0_COERCIVE = "a0"
    A1_COERCIVE = "a1"


class BoundModeType(_LookupEnum):
    """ Hypothesis family used to bound the solution set. """
    H3A = "h3a"
    H3B = "h3b"
    H3C = "h3c"


class ConvexSetVariantType(_LookupEnum):
    """ Tagged variants of a projectable convex set. """
    WHOLE_SPACE = "whole_space"
    SINGLETON = "singleton"
    BALL = "ball"
    BOX = "box"
    HALFSPACE = "halfspace"
    HYPERPLANE = "hyperplane"
    AFFINE_SUBSPACE = "affine_subspace"
    INTERSECTION = "intersection"


class MovingFamilyType(_LookupEnum):
    """ Tagged variants of a time-parametrized set family C(t). """
    STATIC = "static"
    TRANSLATE = "translate"
    BALL_PATH = "ball_path"
    BOX_PATH = "box_path"


class TimeFunctionKindType(_LookupEnum):
    """ Closed-form or sampled maps t -> R^n. """
    ZERO = "zero"
    CONSTANT = "constant"
    POLYNOMIAL = "polynomial"
    SINUSOID = "sinusoid"
    SAMPLES = "samples"
    PIECEWISE = "piecewise"


class StepRuleType(_LookupEnum):
    """ Step length rule of the projected fixed-point iteration. """
    CONTRACTION = "contraction"  # rho = alpha / L^2
    SYMMETRIC = "symmetric"  # rho = 2 / (alpha + L)


class OutputFormatType(_LookupEnum):
    """ File formats written by the command modules. """
    CSV = "csv"
    JSON = "json"


class VerifySuiteType(_LookupEnum):
    """ Named verification suites, one per analysis operation. """
    SENSITIVITY_A0 = "sensitivity-a0"
    SENSITIVITY_A1 = "sensitivity-a1"
    BOUND_H3A = "bound-h3a"
    BOUND_H3B = "bound-h3b"
    BOUND_H3C = "bound-h3c"
    GRONWALL = "gronwall"
    CONVEXITY = "convexity"
    OUTER_ESTIMATE = "outer-estimate"
    KERNEL_PERTURB = "kernel-perturb"
    NONCLOSEDNESS = "nonclosedness"


class DemoNameType(_LookupEnum):
    """ Named demonstrations emitted by the 'demo' command. """
    NONCLOSEDNESS = "nonclosedness"
    UNBOUNDED = "unbounded"


class NumericalFailure(RuntimeError):
    """ Base class for every iteration that failed to reach its tolerance within budget. """


class NoConverge(NumericalFailure):
    """ The per-step variational inequality did not reach its residual target. """

    def __init__(self, iterations: int, residual: float, step_index: Optional[int] = None):
        self.iterations = iterations
        self.residual = residual
        self.step_index = step_index
        where = f" at step {step_index}" if step_index is not None else ""
        super().__init__(f"VI solver did not converge{where}: residual {residual:.3e} after {iterations} iterations")

    def at_step(self, step_index: int) -> "NoConverge":
        """ Return a copy tagged with the offending time step. """
        return NoConverge(iterations=self.iterations, residual=self.residual, step_index=step_index)


class DykstraNoConverge(NumericalFailure):
    """ Projection onto an intersection did not settle within the sweep budget. """

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"Dykstra projection did not converge: change {residual:.3e} after {iterations} sweeps")


class SpectrumNoConverge(NumericalFailure):
    """ Cyclic Jacobi sweeps exceeded their cap. """

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(f"Jacobi eigen-iteration did not converge: off-diagonal norm {off_norm:.3e} "
                         f"after {sweeps} sweeps")


class InvariantViolation(ValueError):
    """ An operator, set or problem failed one of its construction invariants. """

    def __init__(self, invariant: str, detail: str):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}")


class UnsupportedFamily(ValueError):
    """ A moving set variant has no exact formula for the requested quantity. """


class MissingConstant(ValueError):
    """ A constant required by a theorem check is neither computable nor supplied. """

    def __init__(self, constant: str, detail: str):
        self.constant = constant
        super().__init__(f"missing constant '{constant}': {detail}")


class KernelViolation(ValueError):
    """ A perturbation direction leaves the kernel of A0. """


class SpecValidationError(ValueError):
    """ A problem spec document is malformed. """

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        where = []
        if key:
            where.append(f"key '{key}'")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class ExceptionGuru:
    """
    A singleton utility class for capturing and exposing the origin (filename and line number)
    of the innermost frame where the most recent exception occurred by ensuring the exception context
    is captured only once.
    """

    _instance: Optional["ExceptionGuru"] = None
    _context_stored: bool = False

    def __new__(cls) -> "ExceptionGuru":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        if not self.__class__._context_stored:
            self._file_name: Optional[str] = "<unknown>"
            self._line_number: Optional[int] = -1
            self._store_context()
            self.__class__._context_stored = True

    def get_context(self) -> tuple[str, int]:
        """
        Returns:
            Tuple[str, int]: Base filename and line number where the exception originally occurred.
        """
        return self._file_name, self._line_number

    def _store_context(self) -> None:
        exc_type, exc_obj, exc_tb = sys.exc_info()
        if exc_tb is None:
            return

        # Innermost frame
        tb = exc_tb
        while tb.tb_next:
            tb = tb.tb_next

        self._file_name = os.path.basename(tb.tb_frame.f_code.co_filename)
        self._line_number = tb.tb_lineno


class SDKType:
    """
    Singleton service locator for the core modules. Each core module registers itself under a
    snake_case name derived from its class name (e.g. `CoreTelemetry` -> `telemetry`), the root
    object registers as `sweep_vel`.
    """

    _instance: ClassVar[Optional["SDKType"]] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __getattr__(self, name: str) -> Any:
        raise AttributeError(f"{name!r} is not defined in SDKType")

    @classmethod
    def get_instance(cls) -> "SDKType":
        return cls()

    def register(self, instance: object) -> None:
        """
        Registers a core module instance into the SDK singleton.
        """
        _ACRONYMS = {"JSONC"}

        def _camel_to_snake(_name: str) -> str:
            acr_pattern = '|'.join(sorted(_ACRONYMS, key=len, reverse=True))
            parts = re.findall(rf'(?:{acr_pattern})|[A-Z][a-z]*|\d+', _name)
            return '_'.join(part.lower() for part in parts)

        if not any(base.__name__ == "CoreModuleInterface" for base in instance.__class__.__mro__):
            raise TypeError(f"{instance.__class__.__name__} must inherit from 'CoreModuleInterface'")

        class_name = instance.__class__.__name__
        stripped = class_name[4:] if class_name.startswith("Core") else class_name
        snake_name = _camel_to_snake(stripped)

        if snake_name in self.__dict__:
            raise ValueError(f"instance named '{snake_name}' already registered")

        setattr(self, snake_name, instance)
