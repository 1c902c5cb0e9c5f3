#!/usr/bin/env python3
"""
Script:         __main__.py
Author:         SweepVel Team

Description:
    This script serves as the entry point for the SweepVel package.
    Usage: sweepvel [--log-file FILE] [--log-level LEVEL] <command> [command arguments]
"""
import argparse
import sys
from typing import Optional

# Globally initialize colorama library
from colorama import (init, deinit)

# SweepVel imports
from sweep_vel import (EXIT_PASS, EXIT_USAGE, PackageGlobals)
from sweep_vel.sweep_vel import sweep_vel_start as _start


def arguments_process(argv: Optional[list[str]] = None) -> Optional[argparse.Namespace]:
    """
    Global command line arguments processing. Everything after the command name belongs to the command.
    Returns:
        Optional[argparse.Namespace]: Parsed arguments, None when argparse rejected them.
    """
    version_string = f"{PackageGlobals.NAME} Ver {PackageGlobals.VERSION}"
    parser = argparse.ArgumentParser(prog="sweepvel", description=f"{version_string} arguments:")

    parser.add_argument("-v", "--version", action="version", version=version_string)
    parser.add_argument("--log-file", type=str, required=False, help="Optional log file name.")
    parser.add_argument("--log-level", type=str.upper, required=False,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                        help="Log level for this invocation, overriding the package configuration.")
    parser.add_argument("command", help="One of: solve, verify, demo.")
    parser.add_argument("command_args", nargs=argparse.REMAINDER, help="Arguments passed to the command.")

    try:
        return parser.parse_args(argv)
    except SystemExit as parser_exit:
        if parser_exit.code in (0, None):
            raise
        return None


def main(argv: Optional[list[str]] = None) -> int:
    """
    The main entry point for the SweepVel package.
    Returns:
        Shell status: 0 pass, 1 usage or input error, 2 numerical failure or failed check.
    """
    return_code = EXIT_USAGE
    init(autoreset=True, strip=False)  # Required by colorama

    try:
        arguments = arguments_process(argv)
    except SystemExit:
        deinit()
        return EXIT_PASS  # --help or --version

    if arguments is not None:
        return_code = _start(arguments)

    deinit()
    return return_code


if __name__ == "__main__":
    sys.exit(main())
