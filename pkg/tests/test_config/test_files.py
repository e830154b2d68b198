"""Tests for bayesrec.config.files."""

from pathlib import Path

import numpy as np
import pytest

from bayesrec.config.files import (
    instance_from_dict,
    load_distribution,
    load_experiment,
    load_instance,
    load_yaml,
    save_instance,
)
from bayesrec.config.types import PolicyKind
from bayesrec.model.errors import AssumptionTwoViolated, ConfigError


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadYaml:
    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_yaml(tmp_path / "absent.yaml")

    def test_empty_file(self, tmp_path):
        assert load_yaml(_write(tmp_path / "empty.yaml", "\n")) == {}

    def test_invalid_yaml_names_line(self, tmp_path):
        path = _write(tmp_path / "bad.yaml", "m: 2\nprior: [0.5, 0.5\n")
        with pytest.raises(ConfigError, match="invalid YAML"):
            load_yaml(path)

    def test_not_a_mapping(self, tmp_path):
        with pytest.raises(ConfigError, match="mapping"):
            load_yaml(_write(tmp_path / "list.yaml", "- 1\n- 2\n"))


class TestInstanceFiles:
    """Instance YAML files."""

    def test_load(self, tmp_path):
        path = _write(
            tmp_path / "inst.yaml",
            "m: 2\nprior: [0.5, 0.5]\nutility_gap: [2, -4]\n",
        )
        inst = load_instance(path)
        np.testing.assert_allclose(inst.omega, [1.0, -2.0])

    def test_optional_fields(self):
        inst = instance_from_dict(
            {
                "m": 2,
                "prior": [0.5, 0.5],
                "utility_gap": [2.0, -4.0],
                "user_belief": [0.4, 0.6],
                "platform_value": [1.0, 0.5],
            }
        )
        np.testing.assert_allclose(inst.user_belief, [0.4, 0.6])
        np.testing.assert_allclose(inst.value_weight, [0.5, 0.25])

    def test_missing_field(self):
        with pytest.raises(ConfigError, match="utility_gap"):
            instance_from_dict({"m": 2, "prior": [0.5, 0.5]})

    def test_wrong_length(self):
        with pytest.raises(ConfigError, match="expected 2"):
            instance_from_dict({"m": 2, "prior": [0.5, 0.5], "utility_gap": [1.0]})

    def test_non_numeric(self):
        with pytest.raises(ConfigError, match=r"prior\[1\]"):
            instance_from_dict({"m": 2, "prior": [0.5, "x"], "utility_gap": [1.0, -3.0]})

    def test_value_out_of_range(self):
        with pytest.raises(ConfigError, match="platform_value"):
            instance_from_dict(
                {
                    "m": 2,
                    "prior": [0.5, 0.5],
                    "utility_gap": [2.0, -4.0],
                    "platform_value": [1.5, 1.0],
                }
            )

    def test_omega_limit(self):
        with pytest.raises(ConfigError, match="omega"):
            instance_from_dict({"m": 2, "prior": [0.5, 0.5], "utility_gap": [1.0, -1e13]})

    def test_validation_error_keeps_type(self, tmp_path):
        path = _write(tmp_path / "inst.yaml", "m: 2\nprior: [0.5, 0.5]\nutility_gap: [2, -1]\n")
        with pytest.raises(AssumptionTwoViolated, match="inst.yaml"):
            load_instance(path)

    def test_saved_file_loads_back(self, tmp_path, three_state):
        path = save_instance(three_state, tmp_path / "out" / "inst.yaml", comment="drawn\nby hand")
        assert path.read_text(encoding="utf-8").startswith("# drawn\n# by hand\n")
        loaded = load_instance(path)
        np.testing.assert_allclose(loaded.omega, three_state.omega)
        np.testing.assert_allclose(loaded.platform_value, three_state.platform_value)


class TestDistributionFiles:
    def test_load(self, tmp_path):
        text = "support: [0.1, 0.6, 0.9]\nprobabilities: [0.5, 0.3, 0.2]\n"
        path = _write(tmp_path / "d.yaml", text)
        support, probs = load_distribution(path)
        np.testing.assert_allclose(support, [0.1, 0.6, 0.9])
        np.testing.assert_allclose(probs, [0.5, 0.3, 0.2])

    def test_length_mismatch(self, tmp_path):
        path = _write(tmp_path / "d.yaml", "support: [0.1, 0.6]\nprobabilities: [1.0]\n")
        with pytest.raises(ConfigError, match="d.yaml"):
            load_distribution(path)


class TestExperimentFiles:
    """Experiment YAML files."""

    def test_load(self, tmp_path):
        _write(tmp_path / "inst.yaml", "m: 2\nprior: [0.5, 0.5]\nutility_gap: [2, -4]\n")
        path = _write(
            tmp_path / "exp.yaml",
            "instance: inst.yaml\npolicy: poly\nhorizons: [100, 1000]\nseeds: 3\n"
            "output_dir: out\nsolver:\n  max_iterations: 50\n  fit_normals: false\n"
            "loglog:\n  permutation_cap: 5\n",
        )
        cfg = load_experiment(path)
        assert cfg.policy is PolicyKind.POLY
        assert cfg.horizons == [100, 1000]
        assert cfg.seeds == 3
        assert cfg.instance_path == tmp_path / "inst.yaml"
        assert cfg.output_dir == tmp_path / "out"
        assert cfg.poly.solver.max_iterations == 50
        assert not cfg.poly.solver.fit_normals
        assert cfg.loglog.permutation_cap == 5

    def test_generator(self, tmp_path):
        path = _write(
            tmp_path / "exp.yaml",
            "generator:\n  m: 4\n  seed: 9\n  omega_high: 2\npolicy: loglog\nhorizons: [10]\n",
        )
        cfg = load_experiment(path)
        assert cfg.instance_path is None
        assert cfg.generator.m == 4
        assert cfg.generator.omega_high == 2.0

    def test_unknown_field(self, tmp_path):
        path = _write(tmp_path / "exp.yaml", "policy: loglog\nhorizons: [10]\nhorizon: 5\n")
        with pytest.raises(ConfigError, match="unknown field"):
            load_experiment(path)

    def test_unknown_solver_field(self, tmp_path):
        path = _write(
            tmp_path / "exp.yaml",
            "generator: {m: 2}\npolicy: loglog\nhorizons: [10]\nsolver: {speed: 2}\n",
        )
        with pytest.raises(ConfigError, match="solver.speed"):
            load_experiment(path)

    def test_bad_policy(self, tmp_path):
        path = _write(tmp_path / "exp.yaml", "generator: {m: 2}\npolicy: greedy\nhorizons: [10]\n")
        with pytest.raises(ConfigError, match="policy must be one of"):
            load_experiment(path)

    def test_horizons_must_ascend(self, tmp_path):
        text = "generator: {m: 2}\npolicy: loglog\nhorizons: [100, 10]\n"
        path = _write(tmp_path / "exp.yaml", text)
        with pytest.raises(ConfigError, match="ascending"):
            load_experiment(path)

    def test_needs_exactly_one_instance_source(self, tmp_path):
        path = _write(tmp_path / "exp.yaml", "policy: loglog\nhorizons: [10]\n")
        with pytest.raises(ConfigError, match="exactly one"):
            load_experiment(path)

    def test_wrong_type(self, tmp_path):
        path = _write(
            tmp_path / "exp.yaml",
            "generator: {m: 2}\npolicy: loglog\nhorizons: [10]\nseeds: many\n",
        )
        with pytest.raises(ConfigError, match="seeds must be an integer"):
            load_experiment(path)
