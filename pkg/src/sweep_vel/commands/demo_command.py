"""
Script:         demo_command.py
Author:         SweepVel Team

Description:
    Built-in demonstrations:
        nonclosedness - C0 distances of x_k(t) to x(t) = t^2 sin(1/t^2) shrink while their W^{1,1} norms grow.
        unbounded     - the affine family u + l * t * d of solutions over an unbounded moving set, one certified
                        trajectory per l.
"""

import argparse
import sys
from pathlib import Path
from typing import Any

# SweepVel imports
from sweep_vel import (CommandInterface, CoreTelemetry, DemoNameType, EXIT_FAILURE, EXIT_PASS, EXIT_USAGE,
                       InvariantViolation, SweepVelCommandType, bundled_spec_path, c0_norm, certify,
                       kernel_direction, nonclosedness_demo, read_spec_file, solve)

SWEEP_VEL_MODULE_NAME = "demo"
SWEEP_VEL_MODULE_DESCRIPTION = "Run a built-in demonstration"
SWEEP_VEL_MODULE_VERSION = "1.0"

DEFAULT_LAMBDAS: tuple[float, ...] = (-2.0, 0.0, 3.0)
UNBOUNDED_SPEC: str = "unbounded"


def _number_list(text: str, cast=float) -> list:
    """ Parses '1,2,3'; argparse reports the ValueError as a usage error. """
    try:
        values = [cast(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("the list is empty")
    return values


class DemoCommand(CommandInterface):
    SIGNED_VALUE_FLAGS = frozenset({"--lambdas"})

    def __init__(self, **_kwargs: Any):
        """
        Initializes the DemoCommand class.
        """
        super().__init__(command_name=SWEEP_VEL_MODULE_NAME, command_type=SweepVelCommandType.DEMO)

    def _nonclosedness(self, args: argparse.Namespace) -> int:
        if args.k_list is not None and min(args.k_list) < 1:
            print(f"Error: --k-list must hold positive integers, got {args.k_list}", file=sys.stderr)
            return EXIT_USAGE
        quad_points = args.quad_points if args.quad_points is not None else \
            int(self._configuration.get("analysis", {}).get("quad_points", 8))
        if quad_points < 1:
            print(f"Error: --quad-points must be >= 1, got {quad_points}", file=sys.stderr)
            return EXIT_USAGE

        report = nonclosedness_demo(quad_points=quad_points) if args.k_list is None else \
            nonclosedness_demo(args.k_list, quad_points)
        self.emit_report(report.to_dict(), report.rows(), args.out, args.format)

        # Growth of the W11 norms is reported, not asserted
        if not report.c0_within_bounds:
            bad = [row.k for row in report.rows_ if not row.within_bound]
            print(f"Error: C0 distance above 2/k^2 for k in {bad}", file=sys.stderr)
            return EXIT_FAILURE
        return EXIT_PASS

    def _unbounded(self, args: argparse.Namespace) -> int:
        spec_path = args.spec or bundled_spec_path(UNBOUNDED_SPEC)
        spec_file = read_spec_file(spec_path)
        problem = spec_file.problem
        steps = args.steps if args.steps is not None else spec_file.steps
        if steps < 1:
            raise InvariantViolation("steps", f"--steps must be >= 1, got {steps}")

        direction = kernel_direction(problem, shared=True)
        if direction is None:
            raise InvariantViolation("shared kernel", "A0 and A1 share no kernel direction; the solution family "
                                                      "is not an affine line")

        cfg = spec_file.solver_config(self._configuration)
        base = solve(problem, steps, cfg)
        base_norm = c0_norm(base)

        rows, members = [], []
        for lam in args.lambdas or DEFAULT_LAMBDAS:
            member = base.shift_along(direction, float(lam))
            certificate = certify(problem, member, cfg.certify_tol)
            rows.append({"lambda": float(lam), "c0_norm": c0_norm(member),
                         "expected_c0_norm": base_norm + abs(float(lam)) * problem.T,
                         "residual": certificate.max_residual, "certified": certificate.is_solution})
            members.append({"lambda": float(lam), **member.summary(), "certificate": certificate.to_dict()})

        certified = all(row["certified"] for row in rows)
        document = {"spec": str(spec_path), "direction": direction.tolist(), "base": base.summary(),
                    "members": members, "rows": rows, "pass": certified}
        self.emit_report(document, rows, args.out, args.format)

        if not certified:
            failed = [row["lambda"] for row in rows if not row["certified"]]
            print(f"Error: family members do not certify for lambda in {failed}", file=sys.stderr)
            return EXIT_FAILURE
        return EXIT_PASS

    def create_parser(self, parser: argparse.ArgumentParser) -> None:
        """
        Adds command-line arguments.
        Args:
            parser (argparse.ArgumentParser): The argument parser to extend.
        """
        parser.add_argument("name", type=str.lower, choices=[t.value for t in DemoNameType], help="Demo to run.")
        parser.add_argument("--k-list", type=lambda text: _number_list(text, int),
                            help="Comma separated k values for 'nonclosedness' (default: 10,100,1000).")
        parser.add_argument("--quad-points", type=int, help="Gauss-Legendre points per panel for 'nonclosedness'.")
        parser.add_argument("--lambdas", type=_number_list,
                            help="Comma separated family parameters for 'unbounded' (default: -2,0,3).")
        parser.add_argument("--steps", type=int, help="Number of uniform steps N for 'unbounded'.")
        parser.add_argument("--spec", type=Path, help="Spec for 'unbounded' (default: the bundled example).")
        self.add_output_arguments(parser)

    def run(self, args: argparse.Namespace) -> int:
        """
        Executes the 'demo' command.
        Returns:
            int: 0 on success, 2 when the demonstration's checks fail.
        """
        name = DemoNameType.from_str(args.name)
        with CoreTelemetry.span(f"demo.{name.value}"):
            if name is DemoNameType.NONCLOSEDNESS:
                return self._nonclosedness(args)
            return self._unbounded(args)
