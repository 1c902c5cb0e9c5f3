"""
Script:         command_interface.py
Author:         SweepVel Team

Description:
    Core abstract base class which provides a standardized interface for implementing modular,
    pluggable command-line commands within SweepVel.
    Each command subclass is responsible for:
        - Declaring its name and description.
        - Registering its arguments using `argparse`.
        - Implementing execution logic based on parsed arguments.

    Exit codes are shared by every command: 0 pass, 1 usage or malformed input, 2 numerical failure
    or a failed verification check.
"""

import argparse
import csv
import inspect
import io
import json
import logging
import math
import shlex
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import IO, Any, Optional, Sequence, Union

# Third-party
from rich.console import Console
from tabulate import tabulate

# SweepVel imports
from sweep_vel import (InvariantViolation, KernelViolation, MissingConstant, ModuleInfoType, NumericalFailure,
                       OutputFormatType, SDKType, SpecValidationError, SweepVelCommandType, SweepVelModuleType,
                       UnsupportedFamily)

SWEEP_VEL_MODULE_NAME = "CommandInterface"
SWEEP_VEL_MODULE_DESCRIPTION = "Dynamic loadable command interface"

# Exit codes
EXIT_PASS: int = 0
EXIT_USAGE: int = 1
EXIT_FAILURE: int = 2

# Input problems reported as usage errors
_INPUT_ERRORS = (SpecValidationError, InvariantViolation, UnsupportedFamily, MissingConstant, KernelViolation,
                 FileNotFoundError, IsADirectoryError, json.JSONDecodeError)


class _CapturingArgumentParser(argparse.ArgumentParser):
    """
    A custom ArgumentParser that captures error messages into an internal string buffer
    instead of printing to stderr and exiting with argparse's own status.
    """

    def __init__(self, *args, **kwargs):
        self.error_output = io.StringIO()
        super().__init__(*args, **kwargs)

    def exit(self, status=0, message=None):
        if message:
            self.error_output.write(message.strip())
        raise SystemExit(status)

    def error(self, message):
        """
        Usage errors always map to exit code 1.
        """
        self.error_output.write(self.format_usage())
        self.error_output.write(f"Error: {message.strip().capitalize()}\n")
        raise SystemExit(EXIT_USAGE)

    def get_error_message(self) -> str:
        """
        Returns the captured error message from the most recent parse attempt.
        """
        return self.error_output.getvalue().strip()

    def print_help(self, file: Optional[IO[str]] = None) -> None:
        """
        Help text with argparse's lowercase section titles touched up.
        """
        help_text = self.format_help()
        help_text = help_text.replace("optional arguments:", "Optional Arguments:")
        help_text = help_text.replace("options:", "Options:")
        help_text = help_text.replace("show this help message and exit", "Show this help message and exit.")
        print('\n' + help_text, file=file or sys.stdout)


class CommandInterface(ABC):
    """
    Abstract base class for commands that can be dynamically registered and executed.
    Each derived class must define its argument parser and run logic.
    """

    RESERVED_FLAGS = {"--version", "-vv", "--verbose"}

    # Options whose value may start with '-' (comma separated numbers such as '-2,0,3')
    SIGNED_VALUE_FLAGS: frozenset[str] = frozenset()

    def __init__(self, command_name: Optional[str] = None,
                 hidden: Optional[bool] = False,
                 command_type: Optional[SweepVelCommandType] = SweepVelCommandType.UNKNOWN):
        """
        Initializes the command and registers it, probing the caller module for its
        'SWEEP_VEL_MODULE_*' description and version.
        Args:
            command_name (str, optional): The name of the command.
            hidden (bool, optional): Whether to hide commands from the listing.
            command_type (SweepVelCommandType, optional): The type of the command.
        """
        self._hidden = bool(hidden)
        self._args_parser: Optional[_CapturingArgumentParser] = None
        self._registry = self.sdk.registry

        # Probe caller globals for command description and name
        caller_globals = inspect.stack()[1].frame.f_globals
        caller_module_name = caller_globals.get("SWEEP_VEL_MODULE_NAME", None)
        caller_module_description = caller_globals.get("SWEEP_VEL_MODULE_DESCRIPTION", "Description not provided")
        caller_module_version = caller_globals.get("SWEEP_VEL_MODULE_VERSION", "0.0.0")

        self._command_name: str = command_name if command_name is not None else caller_module_name

        self._module_info: ModuleInfoType = (
            self._registry.register_module(name=self._command_name, description=caller_module_description,
                                           version=caller_module_version,
                                           sweep_vel_module_type=SweepVelModuleType.COMMAND, hidden=self._hidden,
                                           command_type=command_type))

        self._configuration: dict[str, Any] = self.sdk.sweep_vel.configuration or {}
        self._core_logger = self.sdk.logger
        self._logger: logging.Logger = self._core_logger.get_logger(name=self._command_name.capitalize())

        if self._logger is None:
            raise RuntimeError("unable to instantiate dependent core")

        if not self.initialize():
            raise RuntimeError(f"failed to initialize '{self._module_info.name}' command")

    def _create_parser(self) -> _CapturingArgumentParser:
        """
        Call the mandatory implementation of create_parser() once, protecting reserved arguments.
        """
        if self._args_parser is not None:
            return self._args_parser

        parser = _CapturingArgumentParser(prog=f"{self.sdk.sweep_vel.prog} {self._module_info.name}",
                                          description=self._module_info.description)
        self.create_parser(parser)

        # Remove user-defined arguments that collide with reserved ones
        for action in [a for a in parser._actions if any(f in self.RESERVED_FLAGS for f in a.option_strings)]:
            self._logger.warning(f"Removing user-defined argument {action.option_strings} (reserved).")
            parser._actions.remove(action)
            for opt in action.option_strings:
                parser._option_string_actions.pop(opt, None)

        parser.add_argument("--version", action="store_true", help="Show version and exit.")
        parser.add_argument("-vv", "--verbose", action="store_true", help="Log progress to the console.")

        self._args_parser = parser
        return parser

    def _glue_signed_values(self, args_list: list[str]) -> list[str]:
        """
        Rewrites '--flag -2,0,3' as '--flag=-2,0,3' for the flags in 'SIGNED_VALUE_FLAGS', since argparse
        takes a leading '-' for an option.
        """
        glued: list[str] = []
        tokens = iter(args_list)
        for token in tokens:
            if token in self.SIGNED_VALUE_FLAGS:
                value = next(tokens, None)
                glued.append(token if value is None else f"{token}={value}")
            else:
                glued.append(token)
        return glued

    def get_info(self) -> ModuleInfoType:
        """
        Retrievers information about the implemented command.
        """
        return self._module_info

    def update_info(self, command_info: ModuleInfoType):
        """
        Updates information about the implemented command.
        """
        self._module_info = command_info

    def execute(self, args: Union[str, list[str], None] = None) -> int:
        """
        Parses the arguments and runs the command, mapping failures to the exit-code contract.
        Args:
            args: A shell-style string or an already split argument list.
        Returns:
            int: 0 pass, 1 usage or malformed input, 2 numerical failure or failed check.
        """
        parser = self._create_parser()
        args_list = self._glue_signed_values(shlex.split(args.strip()) if isinstance(args, str) else
                                             list(args or []))

        if "--version" in args_list:
            print(f"{self.sdk.sweep_vel.name} '{self._module_info.name}' version {self._module_info.version}")
            return EXIT_PASS

        try:
            parsed = parser.parse_args(args_list)
        except SystemExit as parser_exit:
            captured = parser.get_error_message()
            parser.error_output = io.StringIO()
            if captured:
                print(captured, file=sys.stderr)
            return parser_exit.code if isinstance(parser_exit.code, int) else EXIT_USAGE

        verbose = bool(getattr(parsed, "verbose", False))
        if verbose:
            self._core_logger.set_output(state=True)
            self._core_logger.set_level(logging.DEBUG)

        try:
            return self.run(parsed)

        except NumericalFailure as numerical_failure:
            print(f"Error: {numerical_failure}", file=sys.stderr)
            return EXIT_FAILURE

        except _INPUT_ERRORS as input_error:
            print(f"Error: {type(input_error).__name__}: {input_error}", file=sys.stderr)
            return EXIT_USAGE

        finally:
            sys.stdout.flush()

    @staticmethod
    def add_output_arguments(parser: argparse.ArgumentParser) -> None:
        """ The '--out' and '--format' pair shared by every command that writes a report. """
        parser.add_argument("--out", type=Path, help="Output file; prints a table to the terminal when omitted.")
        parser.add_argument("--format", type=str.lower, choices=[t.value for t in OutputFormatType],
                            help="Output format, inferred from the '--out' suffix when omitted (default: json).")

    @staticmethod
    def output_format(out: Optional[Path], requested: Optional[str]) -> Optional[OutputFormatType]:
        """ Explicit format, else the '--out' suffix, else None (terminal table). """
        if requested:
            return OutputFormatType.from_str(requested)
        if out is None:
            return None
        return OutputFormatType.CSV if out.suffix.lower() == ".csv" else OutputFormatType.JSON

    @staticmethod
    def format_cell(value: Any) -> Any:
        """ Floats with 17 significant digits, blanks for missing values. """
        if value is None or (isinstance(value, float) and not math.isfinite(value)):
            return ""
        if isinstance(value, float):
            return format(value, ".17g")
        return value

    def rows_csv_text(self, rows: Sequence[dict[str, Any]]) -> str:
        """ CSV text of dict rows, one column per key of the first row. """
        buffer = io.StringIO()
        if rows:
            writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: self.format_cell(value) for key, value in row.items()})
        return buffer.getvalue()

    def write_json(self, document: dict[str, Any], path: Path) -> Path:
        path.write_text(json.dumps(document, indent=2, default=float) + "\n", encoding="utf-8")
        self._logger.debug(f"Wrote report to '{path}'")
        return path

    def emit_report(self, document: dict[str, Any], rows: Sequence[dict[str, Any]], out: Optional[Path],
                    requested_format: Optional[str]) -> None:
        """
        Route a report: CSV rows or the JSON document to '--out', otherwise to the terminal as CSV, highlighted
        JSON or, with no format requested, a table.
        """
        output_format = self.output_format(out, requested_format)
        if out is not None:
            if output_format is OutputFormatType.CSV:
                out.write_text(self.rows_csv_text(rows), encoding="utf-8")
                self._logger.debug(f"Wrote {len(rows)} row(s) to '{out}'")
            else:
                self.write_json(document, out)
        elif output_format is OutputFormatType.CSV:
            sys.stdout.write(self.rows_csv_text(rows))
        elif output_format is OutputFormatType.JSON:
            Console().print_json(data=json.loads(json.dumps(document, default=float)), indent=2)
        else:
            print(tabulate([[self.format_cell(v) for v in row.values()] for row in rows],
                           headers=list(rows[0].keys()) if rows else [], tablefmt="simple"))

    # noinspection PyMethodMayBeStatic
    def initialize(self, **_kwargs: Any) -> bool:
        """
        Optional interface method for command-specific one-time initialization.
        """
        return True

    @abstractmethod
    def create_parser(self, parser: argparse.ArgumentParser) -> None:
        """
        Adds command-specific arguments to the provided parser.
        """
        raise NotImplementedError("must implement 'create_parser'")

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """
        Executes the actual logic of the command after parsing.
        Returns:
            int: One of the exit codes above.
        """
        raise NotImplementedError("must implement 'run'")

    @property
    def sdk(self) -> SDKType:
        """
        Returns the global SDK singleton instance, which holds references
        to all registered core module instances.
        """
        return SDKType.get_instance()
