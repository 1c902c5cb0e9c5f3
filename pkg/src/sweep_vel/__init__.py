"""
Script:         __init__.py
Author:         SweepVel Team

Description:
    Centralized import hub for the SweepVel package, managing the import of essential modules and
    configurations. It is critical not to reorganize the import order automatically (e.g., by IDE tools
    like PyCharm): every module below imports its dependencies back from this hub, so a module may only
    appear after everything it uses.

--------------------------------------------------------------------------------
Note:
    This file must NOT be optimized and sorted by PyCharm.
    >> Imports order does matter <<
--------------------------------------------------------------------------------

"""
import traceback
from typing import TYPE_CHECKING

try:

    from .settings import (PackageGlobals)

    # Common types
    from sweep_vel.common.local_types import (
        BoundModeType, ConvexSetVariantType, DemoNameType, DykstraNoConverge, ExceptionGuru, InvariantViolation,
        KernelViolation, LogHandlersType, MissingConstant, ModuleInfoType, MovingFamilyType, NoConverge,
        NumericalFailure, OutputFormatType, SDKType, SensitivityModeType, SpecValidationError, SpectrumNoConverge,
        StepRuleType, SweepVelCommandType, SweepVelModuleType, TimeFunctionKindType, UnsupportedFamily,
        VerifySuiteType,
    )

    # Interfaces
    from sweep_vel.core.interfaces.core_module_interface import (CoreModuleInterface)
    from sweep_vel.core.interfaces.command_interface import (CommandInterface, EXIT_FAILURE, EXIT_PASS, EXIT_USAGE)

    # WARNING: Core modules: import order is critical. Do not reorder.
    from sweep_vel.core.registry import (CoreRegistry)
    from sweep_vel.core.telemetry import (CoreTelemetry, TelemetryTrackedCounter)
    from sweep_vel.core.logger import (CoreLogger)
    from sweep_vel.core.jsonc_processor import (CoreJSONCProcessor)
    from sweep_vel.core.dynamic_loader import (CoreDynamicLoader)

    # Engine: operators, data, the per-step solver and the integrator
    from sweep_vel.engine.operators import (OperatorSpectrum, SymmetricOperator, jacobi_eigh)
    from sweep_vel.engine.time_functions import (TimeFunction)
    from sweep_vel.engine.convex_sets import (
        AffineSubspace, Ball, Box, ConvexSet, DEFAULT_PROJECTION, Halfspace, Hyperplane, Intersection, MovingSet,
        ProjectionConfig, Singleton, WholeSpace, box_hausdorff_distance, translation_distance,
    )
    from sweep_vel.engine.vi_solver import (StepVI, VIResult, VISolveConfig, contraction_factor, solve_vi,
                                            vi_residual)
    from sweep_vel.engine.integrator import (
        Certificate, ProblemSpec, Trajectory, c0_distance, c0_norm, certify, check_same_grid, node_error,
        solve, step_operator, w11_distance, w11_norm,
    )
    from sweep_vel.engine.problem_codec import (
        SpecFile, bundled_spec_path, loads_spec, read_spec_file, spec_from_dict, spec_to_dict, validate_document,
        write_spec_file,
    )

    # Engine: theorem checks
    from sweep_vel.engine.analysis.gronwall import (GronwallCheck, check_gronwall, equality_case, gronwall_bound)
    from sweep_vel.engine.analysis.sensitivity import (
        SensitivityPair, SensitivityReport, random_initial_pairs, sensitivity_experiment, theoretical_modulus,
    )
    from sweep_vel.engine.analysis.boundedness import (BoundParams, BoundReport, boundedness_bound, modulus_drift)
    from sweep_vel.engine.analysis.structure import (
        ConvexityReport, KernelPerturbation, KernelPerturbationResult, blend_perturbations, check_kernel_perturbation,
        convexity_check, kernel_direction, kernel_set_membership, sample_kernel_perturbation,
    )
    from sweep_vel.engine.analysis.nonclosedness import (NonClosednessReport, NonClosednessRow, nonclosedness_demo)

    # Last, SweepVel main class
    if TYPE_CHECKING:
        from sweep_vel.sweep_vel import SweepVel

except ImportError as import_error:
    print(f"Critical Startup Exception: failed to import: {import_error.name}")
    traceback.print_exc()
    raise import_error from import_error
except Exception as exception:
    print(f"Critical Startup Unexpected error: {exception}")
    raise exception from exception

# Exported symbols
__all__ = [
    "AffineSubspace", "Ball", "BoundModeType", "BoundParams", "BoundReport", "Box",
    "Certificate", "CommandInterface", "ConvexSet", "ConvexSetVariantType", "ConvexityReport",
    "CoreDynamicLoader", "CoreJSONCProcessor", "CoreLogger", "CoreModuleInterface", "CoreRegistry", "CoreTelemetry",
    "DEFAULT_PROJECTION", "DemoNameType", "DykstraNoConverge",
    "EXIT_FAILURE", "EXIT_PASS", "EXIT_USAGE", "ExceptionGuru",
    "GronwallCheck", "Halfspace", "Hyperplane", "Intersection", "InvariantViolation",
    "KernelPerturbation", "KernelPerturbationResult", "KernelViolation",
    "LogHandlersType", "MissingConstant", "ModuleInfoType", "MovingFamilyType", "MovingSet",
    "NoConverge", "NonClosednessReport", "NonClosednessRow", "NumericalFailure",
    "OperatorSpectrum", "OutputFormatType", "PackageGlobals", "ProblemSpec", "ProjectionConfig",
    "SDKType", "SensitivityModeType", "SensitivityPair", "SensitivityReport", "Singleton", "SpecFile",
    "SpecValidationError", "SpectrumNoConverge", "StepRuleType", "StepVI", "SweepVelCommandType",
    "SweepVelModuleType", "SymmetricOperator", "TelemetryTrackedCounter", "TimeFunction", "TimeFunctionKindType",
    "Trajectory", "UnsupportedFamily", "VIResult", "VISolveConfig", "VerifySuiteType", "WholeSpace",
    "blend_perturbations", "box_hausdorff_distance", "bundled_spec_path", "c0_distance", "c0_norm", "certify",
    "check_gronwall", "check_kernel_perturbation", "check_same_grid", "contraction_factor", "convexity_check",
    "equality_case",
    "gronwall_bound", "jacobi_eigh", "kernel_direction", "kernel_set_membership", "loads_spec", "modulus_drift",
    "node_error",
    "nonclosedness_demo", "random_initial_pairs", "read_spec_file", "sample_kernel_perturbation",
    "sensitivity_experiment", "solve", "solve_vi", "spec_from_dict", "spec_to_dict", "step_operator",
    "theoretical_modulus", "translation_distance", "validate_document", "vi_residual", "w11_distance", "w11_norm",
    "boundedness_bound", "write_spec_file",
]
