from types import ModuleType

from sweep_vel import CommandInterface, CoreDynamicLoader
from sweep_vel.commands import solve_command, verify_command


class _StubCommand(CommandInterface):

    def create_parser(self, parser):
        pass

    def run(self, args) -> int:
        return 0


def _module(**attributes) -> ModuleType:
    module = ModuleType("stub_command")
    for name, value in attributes.items():
        setattr(module, name, value)
    return module


class TestFindCommandClass:

    def test_generic_alias_before_command_is_skipped(self):
        module = _module(Outcome=tuple[dict, list], Rows=list[dict], Interface=CommandInterface,
                         Stub=_StubCommand)
        assert CoreDynamicLoader.find_command_class(module) is _StubCommand

    def test_module_without_command(self):
        assert CoreDynamicLoader.find_command_class(_module(Outcome=tuple[int, str], Plain=dict)) is None

    def test_bundled_command_modules(self):
        assert CoreDynamicLoader.find_command_class(verify_command) is verify_command.VerifyCommand
        assert CoreDynamicLoader.find_command_class(solve_command) is solve_command.SolveCommand
