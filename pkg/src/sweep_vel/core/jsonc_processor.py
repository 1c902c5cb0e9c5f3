"""
Script:         jsonc_processor.py
Author:         SweepVel Team

Description:
    Core module for preprocessing JSON files that may contain comments. It strips comments while keeping
    the original line layout (so decode errors point at the right line), validates the content, and returns
    a standard JSON-compatible object to the caller. Used for the package configuration and for problem
    spec files alike.
"""

import json
import os
import re
import sys
from pathlib import Path
from typing import Any, Optional, Union

# SweepVel imports
from sweep_vel import (CoreLogger, CoreModuleInterface, CoreRegistry, CoreTelemetry, SweepVelModuleType)

SWEEP_VEL_MODULE_NAME = "JSONProcessor"
SWEEP_VEL_MODULE_DESCRIPTION = "JSONC preprocessor"


class CoreJSONCProcessor(CoreModuleInterface):
    """
    JSON Pre-processing class - system service that let us work with non-standard JSON files, aka JSONC.
    """

    def _initialize(self, show_debug: bool = True):
        """
        Args:
            show_debug (bool): Print the lines surrounding a decode error to stderr.
        """
        self._core_logger = CoreLogger.get_instance()
        self._logger = self._core_logger.get_logger(name=SWEEP_VEL_MODULE_NAME)
        self._registry = CoreRegistry.get_instance()
        self._telemetry = CoreTelemetry.get_instance()

        # Dependencies check
        if None in (self._core_logger, self._logger, self._registry, self._telemetry):
            raise RuntimeError("failed to instantiate critical dependencies")

        self._show_debug: bool = show_debug

        self._registry.register_module(name=SWEEP_VEL_MODULE_NAME, description=SWEEP_VEL_MODULE_DESCRIPTION,
                                       sweep_vel_module_type=SweepVelModuleType.CORE)
        self._telemetry.mark_module_boot(module_name=SWEEP_VEL_MODULE_NAME)

    @staticmethod
    def _show_debug_message(file_name: str, json_string: str, line_number: int, error_message: str):
        """
        Prints the five lines before and after the erroneous line, the faulty one highlighted.
        """
        lines = json_string.splitlines()
        print(f"Syntax Error:\nA JSON error was detected in '{os.path.basename(file_name)}' "
              f"at line {line_number}.\n", file=sys.stderr)

        start_line = max(1, line_number - 5)
        end_line = min(len(lines), line_number + 5)

        for index in range(start_line, end_line + 1):
            current_line = lines[index - 1]
            if index == line_number:
                print(f"\033[43;97m{index:3}: {current_line}\033[0m \033[91m// {error_message}\033[0m",
                      file=sys.stderr)
            else:
                print(f"{index:3}: {current_line}", file=sys.stderr)
        print(file=sys.stderr)

    @staticmethod
    def strip_comments(text: str) -> str:
        """
        Remove '//' and '/* */' comments and trailing commas from JSON-like content.
        Newlines inside removed comments are kept so that line numbers survive.
        """
        pattern = re.compile(r'"(?:\\.|[^"\\])*"'  # Double-quoted strings
                             r"|//[^\n]*"  # Single-line comments
                             r"|/\*.*?\*/",  # Multi-line comments
                             flags=re.DOTALL)

        def _replace_func(_match):
            _s = _match.group(0)
            if _s[0] == '"':
                return _s
            return '\n' * _s.count('\n')

        cleaned = pattern.sub(_replace_func, text)

        # Trailing commas before a closing brace or bracket
        return re.sub(r',(\s*[]}])', r'\1', cleaned)

    def loads(self, text: str, source: str = "<string>") -> Any:
        """
        Parse JSONC text.
        Raises:
            json.JSONDecodeError: With line and column relative to the original text.
        """
        clean_json = self.strip_comments(text)
        try:
            return json.loads(clean_json)
        except json.JSONDecodeError as decode_error:
            if self._show_debug:
                self._show_debug_message(source, clean_json, decode_error.lineno, decode_error.msg)
            self._logger.debug(f"'{source}' decode error at line {decode_error.lineno}: {decode_error.msg}")
            raise

    def render(self, file_name: Union[str, Path]) -> Optional[Any]:
        """
        Preprocess a JSON or JSONC file to remove embedded comments.
        If the specified file does not exist but a file with the alternate extension
        exists (.json <-> .jsonc), the alternate will be used.
        Args:
            file_name (str | Path): Path to the JSON or JSONC file.
        Returns:
            Parsed JSON object.
        """
        path_obj = Path(os.path.expanduser(os.path.expandvars(str(file_name))))

        if path_obj.is_file():
            resolved_path = path_obj
        elif path_obj.suffix in ('.json', '.jsonc') and path_obj.with_suffix('.json').is_file():
            resolved_path = path_obj.with_suffix('.json')
        elif path_obj.suffix in ('.json', '.jsonc') and path_obj.with_suffix('.jsonc').is_file():
            resolved_path = path_obj.with_suffix('.jsonc')
        else:
            raise FileNotFoundError(f"JSON/C file '{path_obj}' does not exist.")

        text = resolved_path.read_text(encoding="utf-8")
        self._logger.debug(f"Rendering '{resolved_path}'")
        return self.loads(text, source=str(resolved_path))
