"""
Script:         solve_command.py
Author:         SweepVel Team

Description:
    Solve a problem spec with the catching-up scheme and certify the discrete solution. Writes the trajectory
    (CSV, one row per node: t, u, v, residual) and a JSON run summary; prints the summary when no output file
    is given.
"""

import argparse
import sys
from pathlib import Path
from typing import Any

# Third-party
from rich.console import Console
from tabulate import tabulate

# SweepVel imports
from sweep_vel import (CommandInterface, EXIT_FAILURE, EXIT_PASS, EXIT_USAGE, OutputFormatType, SweepVelCommandType,
                       certify, node_error, read_spec_file, solve)

SWEEP_VEL_MODULE_NAME = "solve"
SWEEP_VEL_MODULE_DESCRIPTION = "Solve a problem spec"
SWEEP_VEL_MODULE_VERSION = "1.0"


class SolveCommand(CommandInterface):

    def __init__(self, **_kwargs: Any):
        """
        Initializes the SolveCommand class.
        """
        super().__init__(command_name=SWEEP_VEL_MODULE_NAME, command_type=SweepVelCommandType.SOLVER)

    @staticmethod
    def _summary_path(out: Path) -> Path:
        """ Run summary written next to a CSV trajectory. """
        summary = out.with_suffix(".json")
        return summary if summary != out else out.with_suffix(".summary.json")

    def create_parser(self, parser: argparse.ArgumentParser) -> None:
        """
        Adds command-line arguments.
        Args:
            parser (argparse.ArgumentParser): The argument parser to extend.
        """
        parser.add_argument("spec", type=Path, help="Problem spec file (JSON, comments allowed).")
        parser.add_argument("--steps", type=int, help="Number of uniform steps N (default: the spec's N).")
        parser.add_argument("--tol", type=float, help="VI residual tolerance (default: spec, then configuration).")
        self.add_output_arguments(parser)

    def run(self, args: argparse.Namespace) -> int:
        """
        Executes the 'solve' command.
        Returns:
            int: 0 when the trajectory certifies, 2 on solver failure or a failed certificate.
        """
        spec_file = read_spec_file(args.spec)
        problem = spec_file.problem
        steps = args.steps if args.steps is not None else spec_file.steps
        if steps < 1:
            print(f"Error: --steps must be >= 1, got {steps}", file=sys.stderr)
            return EXIT_USAGE

        cfg = spec_file.solver_config(self._configuration, tol=args.tol)
        trajectory = solve(problem, steps, cfg)
        certificate = certify(problem, trajectory, cfg.certify_tol)

        summary: dict[str, Any] = {"name": problem.name or args.spec.stem, "spec": str(args.spec),
                                   **trajectory.summary(), "certified": certificate.is_solution,
                                   "certificate": certificate.to_dict(), "solver": cfg.to_dict()}
        if problem.reference is not None:
            error = node_error(trajectory, problem.reference)
            summary.update(node_error=error, node_error_over_h=error / trajectory.h)

        self._logger.info(f"'{summary['name']}': N={steps}, max residual {trajectory.max_residual:.3e}, "
                          f"certified {certificate.is_solution}")

        output_format = self.output_format(args.out, args.format)
        if args.out is not None:
            if output_format is OutputFormatType.CSV:
                trajectory.write_csv(args.out)
                self.write_json(summary, self._summary_path(args.out))
            else:
                self.write_json({**summary, "header": trajectory.header(), "rows": trajectory.rows()}, args.out)
        elif output_format is OutputFormatType.CSV:
            sys.stdout.write(trajectory.to_csv_text())
        elif output_format is OutputFormatType.JSON:
            Console().print_json(data=summary, indent=2)
        else:
            table = [[key, self.format_cell(value)] for key, value in summary.items()
                     if not isinstance(value, dict)]
            print(tabulate(table, headers=["Quantity", "Value"], tablefmt="simple"))

        if not certificate.is_solution:
            print(f"Error: certification failed at step {certificate.failed_step}: residual "
                  f"{certificate.max_residual:.3e} > {cfg.certify_tol:.1e}", file=sys.stderr)
            return EXIT_FAILURE
        return EXIT_PASS
