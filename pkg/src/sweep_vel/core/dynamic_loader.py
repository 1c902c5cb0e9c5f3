"""
Script:         dynamic_loader.py
Author:         SweepVel Team

Description:
    Core module which is responsible for dynamically discovering, validating, executing and registering
    command modules that implement the 'CommandInterface'. Commands are plain files under the package
    'commands' folder, imported by path at boot, so new verification front ends need no static wiring.
"""

import glob
import importlib.util
import inspect
import os
import sys
from contextlib import suppress
from importlib.machinery import ModuleSpec
from pathlib import Path
from types import FunctionType, GenericAlias, ModuleType
from typing import Any, Optional, Union

# SweepVel imports
from sweep_vel import (CommandInterface, CoreLogger, CoreModuleInterface, CoreRegistry, CoreTelemetry,
                       ModuleInfoType, PackageGlobals, SweepVelModuleType)

SWEEP_VEL_MODULE_NAME = "Loader"
SWEEP_VEL_MODULE_DESCRIPTION = "Dynamically search and load supported modules"


class CoreDynamicLoader(CoreModuleInterface):

    def __init__(self, *args, **kwargs):
        """
        Extra initialization required for assigning runtime values to attributes declared
        earlier in `__init__()` See 'CoreModuleInterface' usage.
        """
        self._loaded_commands: int = 0

        super().__init__(*args, **kwargs)

    def _initialize(self) -> None:
        """
        Initializes the loader and its dependencies.
        """
        self._core_logger = CoreLogger.get_instance()
        self._logger = self._core_logger.get_logger(name=SWEEP_VEL_MODULE_NAME)
        self._registry: CoreRegistry = CoreRegistry.get_instance()
        self._telemetry: CoreTelemetry = CoreTelemetry.get_instance()

        # Dependencies check
        if None in (self._core_logger, self._logger, self._registry, self._telemetry):
            raise RuntimeError("failed to instantiate critical dependencies")

        self._registry.register_module(name=SWEEP_VEL_MODULE_NAME, description=SWEEP_VEL_MODULE_DESCRIPTION,
                                       sweep_vel_module_type=SweepVelModuleType.CORE)
        self._telemetry.mark_module_boot(module_name=SWEEP_VEL_MODULE_NAME)

    def _resolve_registered_instance(self, name: str) -> Any:
        """
        Resolve and validate a registered command instance.
        Raises:
            KeyError: When no command by that name was loaded.
        """
        module_record = self._registry.get_module_record_by_name(module_name=name.strip(), case_insensitive=True)
        if module_record is None or module_record.get("sweep_vel_module_type") is not SweepVelModuleType.COMMAND:
            raise KeyError(f"'{name}' was not recognized as a registered command")

        class_instance: Any = module_record.get("class_instance")
        if not callable(getattr(class_instance, "execute", None)):
            raise KeyError(f"command '{name}' does not implement 'execute'")

        return class_instance

    @staticmethod
    def _command_init_is_kwargs_only(cls: type[Any]) -> bool:
        with suppress(Exception):
            init = inspect.unwrap(cls.__init__)
            if not isinstance(init, FunctionType):
                return False

            params = list(inspect.signature(init).parameters.values())
            return (len(params) == 2 and
                    params[0].name == "self" and
                    params[0].kind == inspect.Parameter.POSITIONAL_OR_KEYWORD and
                    params[1].kind == inspect.Parameter.VAR_KEYWORD)

        return False

    @staticmethod
    def _module_summary(python_module_type: ModuleType) -> Optional[str]:
        """ First paragraph of the module 'Description:' docstring section, if any. """
        doc = inspect.getdoc(python_module_type) or ""
        _, found, rest = doc.partition("Description:")
        if not found:
            return None
        paragraph = rest.strip().split("\n\n", 1)[0]
        return " ".join(line.strip() for line in paragraph.splitlines()) or None

    @staticmethod
    def find_command_class(python_module_type: ModuleType) -> Optional[type]:
        """
        First class in the module that implements the command interface. Parameterized generics such as
        'tuple[int, str]' pass 'isinstance(x, type)' before Python 3.11 and are skipped.
        """
        for attr in vars(python_module_type).values():
            if not inspect.isclass(attr) or isinstance(attr, GenericAlias):
                continue
            if issubclass(attr, CommandInterface) and attr is not CommandInterface:
                return attr
        return None

    def discover(self, paths: Union[str, Path, list[Union[str, Path]], None] = None) -> int:
        """
        Scans the command paths for '*_command.py' modules, finds the class derived from 'CommandInterface',
        instantiates it, and registers it.
        Returns:
            int: Number of successfully instantiated commands.
        """
        if paths is None:
            paths = [PackageGlobals.COMMANDS_PATH]
        elif isinstance(paths, (str, Path)):
            paths = [paths]

        for modules_path in (Path(p) for p in paths):
            self._logger.debug(f"Discovering modules in '{modules_path.name}'")
            if not modules_path.exists():
                self._logger.warning(f"Specified modules path not found: '{modules_path}'")
                continue

            for file in sorted(glob.glob(str(modules_path / "*_command.py"))):
                file_base_name: str = os.path.basename(file)
                file_stem_name = os.path.splitext(file_base_name)[0]

                python_module_spec: Optional[ModuleSpec] = importlib.util.spec_from_file_location(file_stem_name, file)
                if python_module_spec is None or python_module_spec.loader is None:
                    self._logger.warning(f"Unable to import '{file_base_name}'. Skipping")
                    continue

                python_module_type: ModuleType = importlib.util.module_from_spec(python_module_spec)
                python_module_spec.loader.exec_module(python_module_type)

                callable_object = self.find_command_class(python_module_type)

                if callable_object is None:
                    self._logger.warning(f"No supported class found in module '{file_stem_name}'. Skipping")
                    continue

                if not self._command_init_is_kwargs_only(callable_object):
                    self._logger.warning(f"Command init in '{file_stem_name}' does not have the expected signature "
                                         f"(**kwargs). Skipping")
                    continue

                command_instance = callable_object()
                module_info: ModuleInfoType = command_instance.get_info()

                description = self._module_summary(python_module_type) or module_info.description
                module_info = self._registry.update_module_record(module_name=module_info.name,
                                                                  description=description,
                                                                  class_instance=command_instance,
                                                                  class_interface_name=CommandInterface.__name__,
                                                                  python_module_type=python_module_type,
                                                                  file_name=file)
                command_instance.update_info(command_info=module_info)

                # Make the dynamically loaded module reachable through standard imports
                sys.modules[python_module_spec.name] = python_module_type

                self._loaded_commands += 1
                self._logger.debug(f"Command '{module_info.name}' loaded from '{file_base_name}'")

        if not self._loaded_commands:
            raise RuntimeError("no modules were successfully loaded")

        return self._loaded_commands

    def get_commands(self) -> list[ModuleInfoType]:
        """ Registered, non hidden commands sorted by name. """
        commands = self._registry.get_modules_list(sweep_vel_module_type=SweepVelModuleType.COMMAND)
        return sorted((c for c in commands if not c.hidden), key=lambda c: c.name)

    def execute_command(self, name: str, arguments: Union[str, list[str], None] = None) -> int:
        """
        Executes the 'execute' method of a registered command module.
        Args:
            name (str): The name of the registered command.
            arguments: Shell-style argument string or argument list.
        Returns:
            int: The command exit code.
        """
        class_instance = self._resolve_registered_instance(name=name)
        return class_instance.execute(arguments)
