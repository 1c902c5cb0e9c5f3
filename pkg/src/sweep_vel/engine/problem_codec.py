"""
Script:         problem_codec.py
Author:         SweepVel Team

Description:
    Problem spec files: JSON documents describing one instance (A0, A1, f, C, u0, T) together with the step
    count, solver overrides, an optional closed-form reference solution and optional theorem constants.
    Documents are validated against the bundled JSON schema before any object is built, so unknown keys and
    wrong types are reported with the JSON path of the offending value.
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional, Union

# Third-party
from jsonschema.exceptions import ValidationError, best_match
from jsonschema.validators import Draft7Validator

# SweepVel imports
from sweep_vel import (CoreJSONCProcessor, CoreLogger, InvariantViolation, MovingSet, PackageGlobals, ProblemSpec,
                       SpecValidationError, SymmetricOperator, TimeFunction, VISolveConfig)

SWEEP_VEL_MODULE_NAME: str = "ProblemCodec"
SWEEP_VEL_MODULE_DESCRIPTION: str = "Problem spec file reader and writer"

SCHEMA_VERSION: str = "1.0"
DEFAULT_STEPS: int = 1000


@dataclass(frozen=True, eq=False)
class SpecFile:
    """
    A parsed spec document.
    Attributes:
        problem: The problem instance.
        steps: Default N for solving.
        solver: Raw solver overrides from the document ('solver' section).
        constants: Optional theorem constants (rho0, c_hat1, c_hat2, beta, epsilon).
        description: Free text carried through unchanged.
        source: File the document was read from.
    """
    problem: ProblemSpec
    steps: int = DEFAULT_STEPS
    solver: dict[str, Any] = field(default_factory=dict)
    constants: dict[str, float] = field(default_factory=dict)
    description: Optional[str] = None
    source: Optional[Path] = None

    def solver_config(self, configuration: Optional[dict[str, Any]] = None, **overrides: Any) -> VISolveConfig:
        """
        Solver settings for this document: package defaults, then the document 'solver' section, then
        explicit overrides (None values ignored).
        """
        configuration = configuration or {}
        solver = {**configuration.get("solver", {}), **self.solver}
        return VISolveConfig.from_configuration(solver, configuration.get("projection")).replace(**overrides)


@lru_cache(maxsize=None)
def load_schema(version: str = SCHEMA_VERSION) -> dict[str, Any]:
    """ The bundled problem spec schema. """
    path = PackageGlobals.SCHEMAS_PATH / version / "problem_spec.json"
    return json.loads(path.read_text(encoding="utf-8"))


def _json_path(error: ValidationError) -> str:
    return ".".join(str(part) for part in error.absolute_path) or "<root>"


def validate_document(data: Any) -> None:
    """
    Raises:
        SpecValidationError: The document does not match the schema; 'key' holds the JSON path.
    """
    error = best_match(Draft7Validator(load_schema()).iter_errors(data))
    if error is not None:
        raise SpecValidationError(f"invalid problem spec: {error.message}", key=_json_path(error))


def _build(key: str, factory, *args, **kwargs):
    """ Run a constructor, attributing invariant failures to a document key. """
    try:
        return factory(*args, **kwargs)
    except InvariantViolation as exception:
        raise SpecValidationError(str(exception), key=key) from exception
    except (KeyError, TypeError, ValueError) as exception:
        raise SpecValidationError(f"malformed value: {exception}", key=key) from exception


def spec_from_dict(data: dict[str, Any], source: Optional[Path] = None) -> SpecFile:
    """
    Validate and build a SpecFile from its document form.
    Raises:
        SpecValidationError: Schema violation or a failed construction invariant.
    """
    validate_document(data)
    dim = int(data["dim"])
    horizon = float(data["T"])

    operators = {}
    for key in ("A0", "A1"):
        operator = _build(key, SymmetricOperator, data[key])
        if operator.dim != dim:
            raise SpecValidationError(f"operator is {operator.dim}x{operator.dim}, expected {dim}x{dim}", key=key)
        operators[key] = operator

    forcing = _build("f", TimeFunction.from_dict, data["f"], dim)
    moving = _build("C", MovingSet.from_dict, data["C"], dim, horizon)
    reference = _build("reference", TimeFunction.from_dict, data["reference"], dim) if "reference" in data else None
    problem = _build("u0", ProblemSpec, A0=operators["A0"], A1=operators["A1"], f=forcing, C=moving,
                     u0=data["u0"], T=horizon, reference=reference, name=data.get("name"))

    return SpecFile(problem=problem, steps=int(data.get("N", DEFAULT_STEPS)), solver=dict(data.get("solver", {})),
                    constants={k: float(v) for k, v in data.get("constants", {}).items()},
                    description=data.get("description"), source=source)


def spec_to_dict(spec_file: SpecFile) -> dict[str, Any]:
    """ Document form of a SpecFile; spec_from_dict(spec_to_dict(s)) rebuilds an equivalent spec. """
    problem = spec_file.problem
    document: dict[str, Any] = {}
    if problem.name:
        document["name"] = problem.name
    if spec_file.description:
        document["description"] = spec_file.description

    document.update({"dim": problem.dim, "A0": problem.A0.to_list(), "A1": problem.A1.to_list(),
                     "f": problem.f.to_dict(), "C": problem.C.to_dict(), "u0": problem.u0.tolist(), "T": problem.T,
                     "N": spec_file.steps})
    if spec_file.solver:
        document["solver"] = dict(spec_file.solver)
    if spec_file.constants:
        document["constants"] = dict(spec_file.constants)
    if problem.reference is not None:
        document["reference"] = problem.reference.to_dict()
    return document


def loads_spec(text: str, source: str = "<string>") -> Any:
    """
    Parse spec text, comments allowed.
    Raises:
        SpecValidationError: Not valid JSON; 'line' holds the offending line.
    """
    processor = CoreJSONCProcessor.get_instance()
    try:
        if processor is not None:
            return processor.loads(text, source)
        return json.loads(CoreJSONCProcessor.strip_comments(text))
    except json.JSONDecodeError as exception:
        raise SpecValidationError(f"malformed JSON in '{source}': {exception.msg}",
                                  line=exception.lineno) from exception


def read_spec_file(path: Union[str, Path]) -> SpecFile:
    """
    Load, validate and build a spec file.
    Raises:
        FileNotFoundError: Missing file.
        SpecValidationError: Malformed JSON or invalid document.
    """
    path = Path(path)
    data = loads_spec(path.read_text(encoding="utf-8"), source=str(path))
    spec_file = spec_from_dict(data, source=path)
    CoreLogger.get_module_logger(SWEEP_VEL_MODULE_NAME).debug(
        f"Loaded spec '{spec_file.problem.name or path.name}' (n={spec_file.problem.dim}, T={spec_file.problem.T})")
    return spec_file


def write_spec_file(spec_file: SpecFile, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(spec_to_dict(spec_file), indent=2) + "\n", encoding="utf-8")
    return path


def bundled_spec_path(name: str) -> Path:
    """ Path of a spec shipped under resources/examples, '.json' optional. """
    file_name = name if name.endswith(".json") else f"{name}.json"
    return PackageGlobals.EXAMPLES_PATH / file_name
