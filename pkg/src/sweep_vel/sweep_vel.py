"""
Script:         sweep_vel.py
Author:         SweepVel Team

Description:
    Central package entry point of SweepVel, responsible for:
        - Initializing the core subsystems in dependency order
        - Loading the package configuration
        - Dynamically discovering and registering the CLI commands
        - Dispatching one command per invocation and returning its exit code

    Core modules are singletons, so the root boots once per process; per-invocation settings such as the
    log file and level are applied on every start.
"""
import argparse
import logging
import os
import sys
from typing import Any, Optional

# Third-party
from colorama import Fore, Style
from tabulate import tabulate

# SweepVel imports
from sweep_vel import (CoreDynamicLoader, CoreJSONCProcessor, CoreLogger, CoreModuleInterface, CoreRegistry,
                       CoreTelemetry, EXIT_USAGE, ExceptionGuru, LogHandlersType, PackageGlobals)

SWEEP_VEL_MODULE_NAME = "SweepVel"
SWEEP_VEL_MODULE_DESCRIPTION = "SweepVel Main"


class SweepVel(CoreModuleInterface):
    """
    Root of the SweepVel system. Derives from 'CoreModuleInterface', so a single shared instance exists.
    """

    def __init__(self, *args, **kwargs):
        """
        Early class initialization.
        """
        self._registry: Optional[CoreRegistry] = None
        self._telemetry: Optional[CoreTelemetry] = None
        self._core_logger: Optional[CoreLogger] = None
        self._processor: Optional[CoreJSONCProcessor] = None
        self._loader: Optional[CoreDynamicLoader] = None
        self._configuration: Optional[dict[str, Any]] = None

        super().__init__(*args, **kwargs)

    def _initialize(self, *args, **kwargs) -> None:
        """
        Instantiates all core modules, loads the configuration and discovers the commands.
        """

        # ----------------------------------------------------------------------
        # The instantiation order must align with the import sequence defined in the
        # package's __init__.py, independent modules first.
        # ----------------------------------------------------------------------
        self._registry = CoreRegistry()
        self._telemetry = CoreTelemetry()

        # Memory-buffered until the invocation decides where logs go
        self._core_logger = CoreLogger(log_level=logging.DEBUG)
        self._logger: logging.Logger = self._core_logger.get_logger()
        self._logger.debug("System initializing..")
        self._logger.debug(f"Started from '{os.getcwd()}', editable package '{PackageGlobals.EDITABLE}'")
        self._logger.debug(f"Package globals: {PackageGlobals.to_dict()}")

        self._processor = CoreJSONCProcessor()

        # Internal package configuration and defaults, not a user file
        self._configuration = self._processor.render(PackageGlobals.CONFIG_FILE)
        self._core_logger.set_configuration(self._configuration)

        self._loader = CoreDynamicLoader()
        commands = self._loader.discover()
        self._logger.debug(f"{commands} command(s) loaded, boot took {self._telemetry.elapsed_since_start():.3f}s")

    def set_logging(self, log_level: Optional[str] = None, log_file: Optional[str] = None) -> None:
        """
        Routes the log records of this invocation: errors to the console, everything at the configured
        level to 'log_file' when one is given. Records buffered during boot are replayed into the file.
        """
        if log_file:
            self._core_logger.set_log_file_name(log_file)
            self._core_logger.set_handlers(LogHandlersType.CONSOLE_HANDLER | LogHandlersType.FILE_HANDLER |
                                           LogHandlersType.MEMORY_HANDLER)
            # Also releases the memory handler
            self._core_logger.flush_memory_logs(LogHandlersType.FILE_HANDLER)
        else:
            self._core_logger.set_handlers(LogHandlersType.CONSOLE_HANDLER)

        level_name = log_level or str(self._configuration.get("log_level", "ERROR"))
        level = logging.getLevelName(level_name.upper())
        if not isinstance(level, int):
            raise ValueError(f"unknown log level '{level_name}'")
        self._core_logger.set_level(level)

    def list_commands(self) -> str:
        """ Table of the registered commands. """
        rows = [[info.name, info.description] for info in self._loader.get_commands()]
        return tabulate(rows, headers=["Command", "Description"], tablefmt="simple")

    def run(self, command: str, args: Optional[list[str]] = None) -> int:
        """
        Executes a registered command.
        Returns:
            int: The command exit code, 1 when the command is unknown.
        """
        try:
            with self._telemetry.start_span(f"command.{command}"):
                return self._loader.execute_command(name=command, arguments=args or [])
        except KeyError as unknown:
            print(f"Error: {unknown.args[0]}\n\n{self.list_commands()}", file=sys.stderr)
            return EXIT_USAGE

    @property
    def configuration(self) -> Optional[dict[str, Any]]:
        """ The package configuration loaded at boot. """
        return self._configuration

    @property
    def prog(self) -> str:
        return "sweepvel"

    @property
    def name(self) -> str:
        return PackageGlobals.NAME


def sweep_vel_start(args: argparse.Namespace) -> int:
    """
    Boots SweepVel (once per process) and runs the requested command.
    Args:
        args (argparse.Namespace): Parsed global arguments, 'command' and 'command_args' included.
    Returns:
        int: Exit status of the command.
    """
    result: int = EXIT_USAGE

    try:
        sweep_vel: SweepVel = SweepVel()
        sweep_vel.set_logging(log_level=args.log_level, log_file=args.log_file)
        result = sweep_vel.run(args.command, args.command_args)

    except KeyboardInterrupt:
        print(f"\n\n{Fore.YELLOW}Interrupted by user, shutting down.{Style.RESET_ALL}\n")

    except Exception as runtime_error:
        # Where the original exception was raised
        file_name, line_number = ExceptionGuru().get_context()
        logger_instance = CoreLogger.get_base_logger()
        if logger_instance is not None:
            logger_instance.error(f"Exception: {runtime_error}. File: {file_name}, Line: {line_number}")
        print(f"\n{Fore.RED}Exception:{Style.RESET_ALL} {runtime_error}.\nFile: {file_name}\nLine: {line_number}",
              file=sys.stderr)
        print(f"Invocation: {' '.join(sys.argv)}\n", file=sys.stderr)

    return result
