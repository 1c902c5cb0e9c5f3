import copy
import json

import pytest
from numpy.testing import assert_allclose

from sweep_vel import (MovingFamilyType, PackageGlobals, SpecValidationError, bundled_spec_path, loads_spec,
                       read_spec_file, spec_from_dict, spec_to_dict, write_spec_file)


@pytest.fixture
def clamp_document() -> dict:
    return json.loads(bundled_spec_path("clamp1d").read_text(encoding="utf-8"))


@pytest.mark.parametrize("path", sorted(PackageGlobals.EXAMPLES_PATH.glob("*.json")), ids=lambda p: p.stem)
def test_bundled_specs_load(path):
    spec_file = read_spec_file(path)
    assert spec_file.problem.name == path.stem
    assert spec_file.problem.u0_admissible
    assert spec_file.source == path


def test_bundled_path_suffix_optional():
    assert bundled_spec_path("clamp1d") == bundled_spec_path("clamp1d.json")


def test_fields_are_built(bundled):
    spec_file = bundled("h3c")
    assert spec_file.problem.C.family is MovingFamilyType.TRANSLATE
    assert spec_file.constants == {"beta": 0.5}


class TestValidation:

    def test_unknown_key(self, clamp_document):
        clamp_document["colour"] = "blue"
        with pytest.raises(SpecValidationError, match="colour") as failure:
            spec_from_dict(clamp_document)
        assert failure.value.key == "<root>"

    def test_wrong_type_reports_path(self, clamp_document):
        clamp_document["T"] = "two"
        with pytest.raises(SpecValidationError) as failure:
            spec_from_dict(clamp_document)
        assert failure.value.key == "T"

    def test_nested_path(self, clamp_document):
        clamp_document["solver"] = {"tol": -1.0}
        with pytest.raises(SpecValidationError) as failure:
            spec_from_dict(clamp_document)
        assert failure.value.key == "solver.tol"

    def test_asymmetric_operator(self, bundled):
        document = spec_to_dict(bundled("a0coercive"))
        document["A0"] = [[2.0, 1.0], [0.0, 0.5]]
        with pytest.raises(SpecValidationError, match="symmetry") as failure:
            spec_from_dict(document)
        assert failure.value.key == "A0"

    def test_operator_dimension(self, clamp_document):
        clamp_document["A1"] = [[1.0, 0.0], [0.0, 1.0]]
        with pytest.raises(SpecValidationError) as failure:
            spec_from_dict(clamp_document)
        assert failure.value.key == "A1"

    def test_initial_value_dimension(self, clamp_document):
        clamp_document["u0"] = [0.0, 0.0]
        with pytest.raises(SpecValidationError, match="dimensions") as failure:
            spec_from_dict(clamp_document)
        assert failure.value.key == "u0"


class TestParsing:

    def test_malformed_json_reports_line(self):
        with pytest.raises(SpecValidationError) as failure:
            loads_spec('{\n  "dim": 1,\n  "T" 2.0\n}')
        assert failure.value.line == 3

    def test_comments_and_trailing_commas(self):
        data = loads_spec('// header\n{\n  "dim": 1, /* inline */\n  "url": "http://x",\n}')
        assert data == {"dim": 1, "url": "http://x"}

    def test_file_rebuilds(self, bundled, tmp_path):
        original = bundled("clamp1d")
        rebuilt = read_spec_file(write_spec_file(original, tmp_path / "clamp.json"))
        assert spec_to_dict(rebuilt) == spec_to_dict(original)
        assert_allclose(rebuilt.problem.reference.sample([0.5, 1.5]), [[0.125], [1.0]])

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_spec_file(tmp_path / "absent.json")


class TestSolverConfig:

    def test_layering(self, clamp_document):
        document = copy.deepcopy(clamp_document)
        document["solver"] = {"tol": 1e-8}
        spec_file = spec_from_dict(document)
        configuration = {"solver": {"tol": 1e-6, "stages": 2}, "projection": {"max_iter": 77}}

        cfg = spec_file.solver_config(configuration)
        assert cfg.tol == 1e-8
        assert cfg.stages == 2
        assert cfg.projection.max_iter == 77
        assert spec_file.solver_config(configuration, tol=1e-7).tol == 1e-7
        assert spec_file.solver_config(configuration, tol=None).tol == 1e-8

    def test_defaults_without_configuration(self, bundled):
        assert bundled("clamp1d").solver_config().tol == 1e-10
