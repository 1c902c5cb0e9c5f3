"""
Script:         verify_command.py
Author:         SweepVel Team

Description:
    Runs one named verification suite against a problem spec (or the suite's bundled default) and reports the
    outcome. Exit code 0 when the suite passes, 2 when a check fails, with the violating datum on stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Optional

# Third-party
import numpy as np

# SweepVel imports
from sweep_vel import (BoundModeType, BoundParams, CommandInterface, CoreTelemetry, EXIT_FAILURE, EXIT_PASS,
                       EXIT_USAGE, InvariantViolation, SensitivityModeType, SpecFile, SweepVelCommandType,
                       VerifySuiteType, blend_perturbations, boundedness_bound, bundled_spec_path,
                       certify, check_kernel_perturbation, convexity_check, equality_case, kernel_direction,
                       kernel_set_membership, nonclosedness_demo, random_initial_pairs, read_spec_file,
                       sample_kernel_perturbation, sensitivity_experiment, solve)

SWEEP_VEL_MODULE_NAME = "verify"
SWEEP_VEL_MODULE_DESCRIPTION = "Run a verification suite"
SWEEP_VEL_MODULE_VERSION = "1.0"

# Bundled spec used when none is given
DEFAULT_SPECS: dict[VerifySuiteType, str] = {
    VerifySuiteType.SENSITIVITY_A0: "a0coercive",
    VerifySuiteType.SENSITIVITY_A1: "a1coercive",
    VerifySuiteType.BOUND_H3A: "ball_h3a",
    VerifySuiteType.BOUND_H3B: "h3b",
    VerifySuiteType.BOUND_H3C: "h3c",
    VerifySuiteType.CONVEXITY: "convexity",
    VerifySuiteType.OUTER_ESTIMATE: "unbounded",
    VerifySuiteType.KERNEL_PERTURB: "kernel",
}

# Gronwall equality cases (a, b) and the allowed gap to the bound
GRONWALL_CASES: tuple[tuple[float, float], ...] = ((1.0, 1.0), (0.5, 2.0))
NEAR_EQUALITY_TOL: float = 1e-4

# (document, rows, passed, detail)
SuiteOutcome = tuple[dict[str, Any], list[dict[str, Any]], bool, str]


class VerifyCommand(CommandInterface):

    def __init__(self, **_kwargs: Any):
        """
        Initializes the VerifyCommand class.
        """
        self._suites: dict[VerifySuiteType, Callable[[argparse.Namespace, Optional[SpecFile]], SuiteOutcome]] = {}
        super().__init__(command_name=SWEEP_VEL_MODULE_NAME, command_type=SweepVelCommandType.VERIFICATION)

    def initialize(self, **_kwargs: Any) -> bool:
        """
        Maps every suite to its handler.
        """
        self._suites = {
            VerifySuiteType.SENSITIVITY_A0: self._sensitivity,
            VerifySuiteType.SENSITIVITY_A1: self._sensitivity,
            VerifySuiteType.BOUND_H3A: self._bound,
            VerifySuiteType.BOUND_H3B: self._bound,
            VerifySuiteType.BOUND_H3C: self._bound,
            VerifySuiteType.GRONWALL: self._gronwall,
            VerifySuiteType.CONVEXITY: self._convexity,
            VerifySuiteType.OUTER_ESTIMATE: self._outer_estimate,
            VerifySuiteType.KERNEL_PERTURB: self._kernel_perturb,
            VerifySuiteType.NONCLOSEDNESS: self._nonclosedness,
        }
        return True

    def _section(self, name: str) -> dict[str, Any]:
        return self._configuration.get(name, {}) or {}

    @staticmethod
    def _steps(args: argparse.Namespace, spec_file: SpecFile) -> int:
        steps = args.steps if args.steps is not None else spec_file.steps
        if steps < 1:
            raise InvariantViolation("steps", f"--steps must be >= 1, got {steps}")
        return steps

    def _sensitivity(self, args: argparse.Namespace, spec_file: Optional[SpecFile]) -> SuiteOutcome:
        problem = spec_file.problem
        mode = SensitivityModeType.A0_COERCIVE if args.suite is VerifySuiteType.SENSITIVITY_A0 \
            else SensitivityModeType.A1_COERCIVE
        analysis = self._section("analysis")
        seed = args.seed if args.seed is not None else int(self._section("verify").get("seed", 0))
        count = args.pairs if args.pairs is not None else int(analysis.get("pairs", 10))
        if count < 1:
            raise InvariantViolation("pairs", f"--pairs must be >= 1, got {count}")

        initials = random_initial_pairs(problem, count, np.random.default_rng(seed))
        report = sensitivity_experiment(problem, initials, mode, self._steps(args, spec_file),
                                        slack=float(analysis.get("sensitivity_slack", 0.05)),
                                        cfg=spec_file.solver_config(self._configuration, tol=args.tol))

        detail = "; ".join(f"pair |x0-y0|={pair.initial_distance:.6g}: ratio {pair.ratio:.6g} > "
                           f"{report.modulus_theoretical:.6g}" for pair in report.violations)
        return {**report.to_dict(), "seed": seed}, report.rows(), report.passed, detail

    def _bound(self, args: argparse.Namespace, spec_file: Optional[SpecFile]) -> SuiteOutcome:
        mode = BoundModeType.from_str(args.suite.value.split("-", 1)[1])
        analysis = self._section("analysis")
        params = BoundParams.from_dict(spec_file.constants, epsilon=analysis.get("beta_epsilon"),
                                       abs_slack=analysis.get("bound_slack"),
                                       rel_slack=analysis.get("bound_rel_slack"))
        report = boundedness_bound(spec_file.problem, mode, params, steps=self._steps(args, spec_file),
                                   cfg=spec_file.solver_config(self._configuration, tol=args.tol))
        return report.to_dict(), report.rows(), report.passed, "; ".join(report.failures)

    @staticmethod
    def _gronwall(_args: argparse.Namespace, _spec_file: Optional[SpecFile]) -> SuiteOutcome:
        cases = [equality_case(a, b) for a, b in GRONWALL_CASES]
        rows, failures = [], []
        for case in cases:
            check = case["check"]
            ok = check["hypothesis_holds"] and check["conclusion_holds"] and abs(case["gap"]) <= NEAR_EQUALITY_TOL
            rows.append({"a": case["a"], "b": case["b"], "integral": case["integral"], "bound": case["bound"],
                         "gap": case["gap"], "pass": ok})
            if not ok:
                failures.append(f"a={case['a']}, b={case['b']}: integral {case['integral']:.12g} vs bound "
                                f"{case['bound']:.12g}")
        return {"cases": cases, "near_equality_tol": NEAR_EQUALITY_TOL, "pass": not failures}, rows, \
            not failures, "; ".join(failures)

    def _shared_direction(self, spec_file: SpecFile) -> np.ndarray:
        direction = kernel_direction(spec_file.problem, shared=True)
        if direction is None:
            raise InvariantViolation("shared kernel", "A0 and A1 share no kernel direction to build a second "
                                                      "solution along")
        return direction

    def _convexity(self, args: argparse.Namespace, spec_file: Optional[SpecFile]) -> SuiteOutcome:
        problem = spec_file.problem
        verify = self._section("verify")
        cfg = spec_file.solver_config(self._configuration, tol=args.tol)
        u = solve(problem, self._steps(args, spec_file), cfg)
        v = u.shift_along(self._shared_direction(spec_file), float(verify.get("kernel_shift", 3.0)))

        report = convexity_check(problem, u, v, verify.get("convexity_lambdas", [0.25, 0.5, 0.75]),
                                 tol=cfg.certify_tol)
        detail = "; ".join(f"lambda={row['lambda']}: residual {row['residual']:.3e} > {report.tol:.1e}"
                           for row in report.rows() if not row["certified"])
        if not (report.base_certified and report.other_certified):
            detail = "; ".join(filter(None, ["endpoint solutions do not certify", detail]))
        return report.to_dict(), report.rows(), report.passed, detail

    def _outer_estimate(self, args: argparse.Namespace, spec_file: Optional[SpecFile]) -> SuiteOutcome:
        problem = spec_file.problem
        cfg = spec_file.solver_config(self._configuration, tol=args.tol)
        u = solve(problem, self._steps(args, spec_file), cfg)
        direction = self._shared_direction(spec_file)

        rows = []
        for lam in self._section("verify").get("outer_estimate_lambdas", [-2.0, 3.0]):
            v = u.shift_along(direction, float(lam))
            certificate = certify(problem, v, cfg.certify_tol)
            rows.append({"lambda": float(lam), "residual": certificate.max_residual,
                         "certified": certificate.is_solution,
                         "in_outer_estimate": kernel_set_membership(problem, u, v, cfg.certify_tol)})

        failures = [f"lambda={row['lambda']}: certified {row['certified']}, in u + K {row['in_outer_estimate']}"
                    for row in rows if not (row["certified"] and row["in_outer_estimate"])]
        document = {"direction": direction.tolist(), "base_max_residual": u.max_residual, "rows": rows,
                    "pass": not failures}
        return document, rows, not failures, "; ".join(failures)

    def _kernel_perturb(self, args: argparse.Namespace, spec_file: Optional[SpecFile]) -> SuiteOutcome:
        problem = spec_file.problem
        direction = kernel_direction(problem)
        if direction is None:
            raise InvariantViolation("kernel", "A0 has a trivial kernel; there is nothing to perturb along")

        cfg = spec_file.solver_config(self._configuration, tol=args.tol)
        u = solve(problem, self._steps(args, spec_file), cfg)
        magnitude = float(self._section("verify").get("kernel_magnitude", 1.0))
        iterations = int(self._section("analysis").get("bisection_iterations", 20))
        results = [sample_kernel_perturbation(problem, u, sign * direction, magnitude, iterations=iterations,
                                              certify_tol=cfg.certify_tol) for sign in (1.0, -1.0)]
        blend = blend_perturbations(results[0].perturbation, results[1].perturbation, 0.5)
        blend_valid = check_kernel_perturbation(problem, u, blend)

        passed = all(result.passed for result in results) and blend_valid
        rows = [{"t": row["t"], "magnitude_plus": row["magnitude"], "magnitude_minus": other["magnitude"]}
                for row, other in zip(results[0].rows(), results[1].rows())]
        failures = [f"{label}: {'; '.join(result.notes) or 'perturbed trajectory does not certify'}"
                    for label, result in zip(("+d", "-d"), results) if not result.passed]
        if not blend_valid:
            failures.append("blend of +d and -d perturbations leaves the kernel set")
        document = {"plus": results[0].to_dict(), "minus": results[1].to_dict(), "blend_valid": blend_valid,
                    "pass": passed}
        return document, rows, passed, "; ".join(failures)

    def _nonclosedness(self, _args: argparse.Namespace, _spec_file: Optional[SpecFile]) -> SuiteOutcome:
        report = nonclosedness_demo(quad_points=int(self._section("analysis").get("quad_points", 8)))
        failures = [f"k={row.k}: C0 distance {row.c0_distance:.6g} > {row.c0_bound:.6g}"
                    for row in report.rows_ if not row.within_bound]
        if not report.w11_strictly_increasing:
            failures.append("W11 norms are not strictly increasing in k")
        return report.to_dict(), report.rows(), report.passed, "; ".join(failures)

    def create_parser(self, parser: argparse.ArgumentParser) -> None:
        """
        Adds command-line arguments.
        Args:
            parser (argparse.ArgumentParser): The argument parser to extend.
        """
        parser.add_argument("suite", type=str.lower, choices=[t.value for t in VerifySuiteType],
                            help="Verification suite to run.")
        parser.add_argument("spec", type=Path, nargs="?", help="Problem spec (default: the suite's bundled spec).")
        parser.add_argument("--steps", type=int, help="Number of uniform steps N (default: the spec's N).")
        parser.add_argument("--tol", type=float, help="VI residual tolerance.")
        parser.add_argument("--seed", type=int, help="Seed for randomly drawn initial pairs.")
        parser.add_argument("--pairs", type=int, help="Number of initial pairs for the sensitivity suites.")
        self.add_output_arguments(parser)

    def run(self, args: argparse.Namespace) -> int:
        """
        Executes the 'verify' command.
        Returns:
            int: 0 when the suite passes, 2 when a check fails.
        """
        args.suite = VerifySuiteType.from_str(args.suite)
        if args.suite is None:
            return EXIT_USAGE

        spec_path = args.spec
        if spec_path is None and args.suite in DEFAULT_SPECS:
            spec_path = bundled_spec_path(DEFAULT_SPECS[args.suite])
        spec_file = read_spec_file(spec_path) if spec_path is not None else None

        with CoreTelemetry.span(f"verify.{args.suite.value}", spec=str(spec_path)):
            document, rows, passed, detail = self._suites[args.suite](args, spec_file)

        document = {"suite": args.suite.value, "spec": None if spec_path is None else str(spec_path), **document}
        self._logger.info(f"Suite '{args.suite.value}' {'passed' if passed else 'failed'}")
        self.emit_report(document, rows, args.out, args.format)

        if not passed:
            print(f"Error: suite '{args.suite.value}' failed: {detail or 'see report'}", file=sys.stderr)
            return EXIT_FAILURE
        return EXIT_PASS
