import pytest

from sweep_vel import PackageGlobals
from sweep_vel.settings import THREADS_ENV_VAR


def test_paths_resolve():
    assert PackageGlobals.CONFIG_FILE.is_file()
    assert (PackageGlobals.SCHEMAS_PATH / "1.0" / "problem_spec.json").is_file()
    assert PackageGlobals.EXAMPLES_PATH.is_dir()
    assert PackageGlobals.NAME == "SweepVel"


def test_to_dict_exports_uppercase_constants():
    exported = PackageGlobals.to_dict()
    assert exported["PROJ_NAME"] == "sweep_vel"
    assert "SESSION_ID" in exported
    assert all(key.isupper() for key in exported)


class TestThreadCap:

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "3")
        assert PackageGlobals.thread_cap() == 3

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_invalid_values_fall_back(self, monkeypatch, capsys, raw):
        monkeypatch.setenv(THREADS_ENV_VAR, raw)
        assert PackageGlobals.thread_cap() >= 1
        assert "Ignoring invalid" in capsys.readouterr().err

    def test_default_is_positive(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert PackageGlobals.thread_cap() >= 1
