"""Tests for experiments/ - configs, registry, catalog and the experiment kinds."""

import logging

import numpy as np
import pytest
import yaml

from rabibus.errors import ConfigError
from rabibus.experiments import (
    ExperimentCatalog,
    ExperimentConfig,
    ExperimentKind,
    ExperimentRegistry,
    ExperimentResult,
)
from rabibus.experiments.base import (
    grid_from_section,
    number_field,
    rabi_from_config,
    rates_from_config,
    system_from_config,
    tolerances_from_config,
)
from rabibus.experiments.transmon import charging_energy

from helpers import write_config

KINDS = {"spectrum", "dynamics", "effective-compare", "steady", "transmon", "transmon-chain"}


def _config(text: str) -> ExperimentConfig:
    return ExperimentConfig.from_mapping(yaml.safe_load(text))


# ── ExperimentConfig ───────────────────────────────────────────────────


class TestExperimentConfig:
    def test_from_mapping(self, spectrum_config_text):
        config = _config(spectrum_config_text)
        assert config.id == "tiny-spectrum"
        assert config.kind == "spectrum"
        assert config.title == "Tiny spectrum"
        assert set(config.sections) == {"rabi", "qubits", "sweep", "spectrum"}

    def test_id_defaults_to_file_stem(self, tmp_path):
        path = write_config(tmp_path, "my-run.yaml", "kind: transmon\ntransmon: {e_c: 0.02}\n")
        assert ExperimentConfig.load(path).id == "my-run"

    def test_not_a_mapping(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping([1, 2, 3])

    def test_missing_kind(self):
        with pytest.raises(ConfigError) as exc_info:
            ExperimentConfig.from_mapping({"id": "x"})
        assert exc_info.value.field == "kind"

    def test_invalid_yaml(self, tmp_path):
        path = write_config(tmp_path, "broken.yaml", "kind: [unclosed\n")
        with pytest.raises(ConfigError, match="invalid YAML"):
            ExperimentConfig.load(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            ExperimentConfig.load(tmp_path / "absent.yaml")

    def test_section_must_be_mapping(self):
        config = ExperimentConfig.from_mapping({"kind": "spectrum", "rabi": [1, 2]})
        with pytest.raises(ConfigError):
            config.section("rabi")

    def test_missing_section_is_empty(self):
        assert ExperimentConfig.from_mapping({"kind": "spectrum"}).section("time") == {}

    def test_with_n_fock_copies(self, spectrum_config_text):
        config = _config(spectrum_config_text)
        finer = config.with_n_fock(16)
        assert finer.section("rabi")["n_fock"] == 16
        assert config.section("rabi")["n_fock"] == 8


# ── Section parsing ────────────────────────────────────────────────────


class TestParsing:
    def test_number_field(self):
        assert number_field({"a": 2}, "a", "s") == 2.0
        assert number_field({}, "a", "s", 1.5) == 1.5

    def test_number_field_rejects(self):
        with pytest.raises(ConfigError, match="missing s.a"):
            number_field({}, "a", "s")
        with pytest.raises(ConfigError):
            number_field({"a": True}, "a", "s")
        with pytest.raises(ConfigError):
            number_field({"a": "0.3"}, "a", "s")

    def test_linspace_grid(self):
        grid = grid_from_section({"start": 0.0, "stop": 1.0, "points": 5}, "sweep")
        assert np.allclose(grid, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_values_grid(self):
        assert np.allclose(grid_from_section({"values": [0.2, 0.4]}, "sweep"), [0.2, 0.4])

    def test_bad_grids(self):
        with pytest.raises(ConfigError):
            grid_from_section({"values": []}, "sweep")
        with pytest.raises(ConfigError):
            grid_from_section({"start": 0.0, "stop": 1.0, "points": 0}, "sweep")
        with pytest.raises(ConfigError):
            grid_from_section({"start": 0.0, "points": 3}, "sweep")

    def test_system(self, spectrum_config_text):
        s = system_from_config(_config(spectrum_config_text))
        assert s.rabi.n_fock == 8
        assert s.omegas == [0.2, 0.2]
        assert s.couplings == [0.02, 0.02]

    def test_rabi_default_truncation(self):
        config = ExperimentConfig.from_mapping({"kind": "spectrum", "rabi": {"omega_p": 0.8}})
        rabi = rabi_from_config(config, default_n_fock=12)
        assert rabi.g_p == 0.0
        assert rabi.n_fock == 12

    def test_qubits_must_be_list(self):
        config = ExperimentConfig.from_mapping({"kind": "spectrum", "rabi": {"omega_p": 0.8}, "qubits": {"a": 1}})
        with pytest.raises(ConfigError):
            system_from_config(config)

    def test_rates(self, steady_config_text):
        rates = rates_from_config(_config(steady_config_text))
        assert rates.gamma_out == 0.1

    def test_bad_rates(self):
        config = ExperimentConfig.from_mapping({"kind": "steady", "rates": {"gamma_out": -1.0}})
        with pytest.raises(ConfigError):
            rates_from_config(config)

    def test_tolerance_overrides(self):
        config = ExperimentConfig.from_mapping({"kind": "spectrum", "tolerances": {"degeneracy": 1e-8}})
        assert tolerances_from_config(config).degeneracy == 1e-8

    def test_unknown_tolerance(self):
        config = ExperimentConfig.from_mapping({"kind": "spectrum", "tolerances": {"slack": 1.0}})
        with pytest.raises(ConfigError) as exc_info:
            tolerances_from_config(config)
        assert exc_info.value.field == "tolerances"

    def test_charging_energy_from_units(self):
        config = ExperimentConfig.from_mapping({"kind": "transmon", "units": {"e_c_ghz": 0.31, "cavity_ghz": 8.0}})
        assert charging_energy(config) == pytest.approx(0.03875)


# ── ExperimentRegistry ─────────────────────────────────────────────────


class _EchoExperiment(ExperimentKind):
    @property
    def name(self) -> str:
        return "echo"

    @property
    def description(self) -> str:
        return "returns its sweep values"

    async def run(self, config, executor=None):
        grid = grid_from_section(config.section("sweep"), "sweep")
        doubled = await self.map_points(lambda x: 2.0 * x, list(grid), executor)
        return ExperimentResult(columns=["x", "y"], rows=np.column_stack([grid, doubled]))


class _OtherEcho(_EchoExperiment):
    pass


class _BadName(_EchoExperiment):
    @property
    def name(self) -> str:
        return "Echo Twice"


class _Undocumented(_EchoExperiment):
    @property
    def name(self) -> str:
        return "silent"

    @property
    def description(self) -> str:
        return ""


class _StrangeSections(_EchoExperiment):
    required_sections = ("sweep", "magnets")

    @property
    def name(self) -> str:
        return "strange"


class TestExperimentRegistry:
    def setup_method(self):
        ExperimentRegistry.register(_EchoExperiment)

    def teardown_method(self):
        for name in ("echo", "silent", "strange"):
            ExperimentRegistry._kinds.pop(name, None)

    def test_builtin_kinds(self):
        assert KINDS <= set(ExperimentRegistry.names())
        assert ExperimentRegistry.names() == sorted(ExperimentRegistry.names())

    def test_register_and_get(self):
        assert isinstance(ExperimentRegistry.get("echo"), _EchoExperiment)
        assert ExperimentRegistry.require("echo") is ExperimentRegistry.get("echo")

    def test_register_returns_class(self):
        assert ExperimentRegistry.register(_EchoExperiment) is _EchoExperiment

    def test_get_nonexistent(self):
        assert ExperimentRegistry.get("nonexistent") is None

    def test_require_unknown_suggests(self):
        with pytest.raises(ConfigError, match="Did you mean 'steady'") as exc_info:
            ExperimentRegistry.require("steddy")
        assert exc_info.value.field == "kind"

    def test_suggest_without_match(self):
        assert ExperimentRegistry.suggest("zzzzzz") == ""

    def test_name_clash_rejected(self):
        with pytest.raises(ValueError, match="already registered"):
            ExperimentRegistry.register(_OtherEcho)
        assert type(ExperimentRegistry.get("echo")) is _EchoExperiment

    @pytest.mark.parametrize("kind_class,message", [
        (_BadName, "lowercase"),
        (_Undocumented, "no description"),
        (_StrangeSections, "magnets"),
    ])
    def test_malformed_kind_rejected(self, kind_class, message):
        with pytest.raises(ValueError, match=message):
            ExperimentRegistry.register(kind_class)
        assert kind_class().name not in ExperimentRegistry.names()

    def test_descriptions(self):
        for name in KINDS:
            assert ExperimentRegistry.get(name).description

    async def test_map_points_keeps_order(self):
        config = ExperimentConfig.from_mapping({"kind": "echo", "sweep": {"values": list(range(20))}})
        result = await ExperimentRegistry.get("echo").run(config)
        assert np.allclose(result.column("y"), 2.0 * np.arange(20))


# ── ExperimentCatalog ──────────────────────────────────────────────────


class TestExperimentCatalog:
    def test_loads_configs_and_user_dir(self, populated_config_dir):
        catalog = ExperimentCatalog(populated_config_dir)
        assert set(catalog.ids()) == {"tiny-spectrum", "tiny-steady", "mine"}
        assert catalog.get("mine").kind == "transmon"

    def test_entries(self, populated_config_dir):
        entries = {e["id"]: e for e in ExperimentCatalog(populated_config_dir).entries()}
        assert entries["tiny-steady"] == {
            "id": "tiny-steady", "kind": "steady", "title": "Tiny steady state", "reproduces": "",
        }

    def test_entries_carry_reproduced_result(self, populated_config_dir, spectrum_config_text):
        write_config(populated_config_dir, "tiny-spectrum.yaml", spectrum_config_text + "reproduces: \"levels near delta = 0.2\"\n")
        entries = {e["id"]: e for e in ExperimentCatalog(populated_config_dir).entries()}
        assert entries["tiny-spectrum"]["reproduces"] == "levels near delta = 0.2"

    def test_broken_file_skipped(self, populated_config_dir, caplog):
        write_config(populated_config_dir, "broken.yaml", "kind: [unclosed\n")
        with caplog.at_level(logging.WARNING, logger="rabibus"):
            ids = ExperimentCatalog(populated_config_dir).ids()
        assert "broken" not in ids
        assert "skipping broken.yaml" in caplog.text

    def test_duplicate_ids_warn(self, populated_config_dir, spectrum_config_text, caplog):
        write_config(populated_config_dir / "user", "copy.yaml", spectrum_config_text)
        with caplog.at_level(logging.WARNING, logger="rabibus"):
            ExperimentCatalog(populated_config_dir).load_all()
        assert "duplicate config id 'tiny-spectrum'" in caplog.text

    def test_resolve_id_and_path(self, populated_config_dir):
        catalog = ExperimentCatalog(populated_config_dir)
        assert catalog.resolve("tiny-steady").kind == "steady"
        assert catalog.resolve(str(populated_config_dir / "tiny-spectrum.yaml")).id == "tiny-spectrum"

    def test_resolve_unknown(self, populated_config_dir):
        with pytest.raises(ConfigError, match="no config file or id"):
            ExperimentCatalog(populated_config_dir).resolve("nope")

    def test_missing_directory(self, tmp_path):
        assert ExperimentCatalog(tmp_path / "absent").ids() == []

    def test_bundled_configs(self, configs_dir):
        catalog = ExperimentCatalog(configs_dir)
        ids = set(catalog.ids())
        assert {"spectrum-identical", "steady-identical", "transmon-chain", "transfer-weak"} <= ids
        assert {c.kind for c in (catalog.get(i) for i in ids)} == KINDS


# ── Experiment kinds on small inputs ───────────────────────────────────


class TestKinds:
    async def test_spectrum(self, spectrum_config_text):
        config = _config(spectrum_config_text)
        result = await ExperimentRegistry.get("spectrum").run(config)
        assert result.columns[0] == "delta"
        assert result.columns[1:5] == ["E0", "E1", "E2", "E3"]
        assert "X0" in result.columns
        assert result.rows.shape == (3, 13)
        assert result.resolved["exchange"] is True
        assert result.summary["crossings"] == []

    async def test_rabi_spectrum(self):
        config = _config(
            "kind: spectrum\n"
            "rabi: {omega_p: 0.8, g_p: 0.0, n_fock: 10}\n"
            "sweep: {variable: g_p, values: [0.0, 0.1]}\n"
            "spectrum: {levels: 4}\n"
        )
        result = await ExperimentRegistry.get("spectrum").run(config)
        assert result.columns == ["g_p", "E0", "E1", "E2", "E3", "P0", "P1", "P2", "P3"]
        assert list(result.rows[0, 5:]) == [1, -1, -1, 1]

    async def test_transmon_fan(self, populated_config_dir):
        config = ExperimentCatalog(populated_config_dir).get("mine")
        result = await ExperimentRegistry.get("transmon").run(config)
        assert result.columns == ["ej_ec", "E0", "E1", "E2"]
        assert np.allclose(result.column("E0"), 0.0)
        assert result.summary["anharmonicity"] == pytest.approx(0.0223, rel=0.02)

    async def test_dynamics_transfer(self):
        config = _config(
            "kind: dynamics\n"
            "rabi: {omega_p: 0.8, g_p: 0.3, n_fock: 6}\n"
            "qubits:\n"
            "  - {omega_q: 0.2, g: 0.02}\n"
            "  - {omega_q: 0.2, g: 0.02}\n"
            "dynamics: {mode: transfer, entropy: true}\n"
            "time: {start: 0.0, stop: 50.0, points: 6}\n"
        )
        result = await ExperimentRegistry.get("dynamics").run(config)
        assert result.columns == ["t", "n1", "n2", "p_0_eg", "p_0_ge", "entropy"]
        assert result.rows.shape == (6, 6)
        assert result.column("n1")[0] == pytest.approx(1.0)
        assert result.column("p_0_eg")[0] == pytest.approx(1.0)

    async def test_steady(self, steady_config_text):
        result = await ExperimentRegistry.get("steady").run(_config(steady_config_text))
        assert result.columns == ["g_p", "n1_ss", "n2_ss"]
        assert result.rows.shape == (2, 3)
        assert np.all((result.column("n2_ss") > 0) & (result.column("n2_ss") < 1))
        assert "relative_variation" in result.summary


class TestKindValidation:
    def _dynamics(self, extra: str, qubits: int = 2) -> ExperimentConfig:
        lines = "".join("  - {omega_q: 0.2, g: 0.02}\n" for _ in range(qubits))
        return _config(
            "kind: dynamics\n"
            "rabi: {omega_p: 0.8, g_p: 0.3}\n"
            f"qubits:\n{lines}" + extra
        )

    def test_speed_needs_sweep(self):
        problems = ExperimentRegistry.get("dynamics").validate(self._dynamics("dynamics: {mode: speed}\n"))
        assert any("sweep" in p for p in problems)

    def test_inversion_needs_explicit_time(self):
        problems = ExperimentRegistry.get("dynamics").validate(self._dynamics("dynamics: {mode: inversion}\n"))
        assert any("time" in p for p in problems)

    def test_dynamics_needs_two_qubits(self):
        problems = ExperimentRegistry.get("dynamics").validate(self._dynamics("dynamics: {mode: transfer}\n", qubits=1))
        assert "dynamics needs exactly two qubits" in problems

    def test_unknown_initial_state(self):
        config = self._dynamics("dynamics: {mode: transfer, initial: xy}\n")
        assert ExperimentRegistry.get("dynamics").validate(config)

    def test_spectrum_rabi_only_variables(self):
        config = _config("kind: spectrum\nrabi: {omega_p: 0.8}\nsweep: {variable: delta, values: [0.1]}\n")
        assert ExperimentRegistry.get("spectrum").validate(config)

    def test_effective_levels(self):
        config = self._dynamics("effective: {levels: 1}\n")
        problems = ExperimentRegistry.get("effective-compare").validate(config)
        assert "effective.levels" in problems[0]

    def test_steady_method(self, steady_config_text):
        config = _config(steady_config_text + "steady: {method: power}\n")
        assert ExperimentRegistry.get("steady").validate(config)

    def test_chain_needs_ratio(self):
        config = _config("kind: transmon-chain\nrabi: {omega_p: 1.0}\ntransmon: {e_c: 0.0194}\n")
        problems = ExperimentRegistry.get("transmon-chain").validate(config)
        assert any("transmon.ratio" in p for p in problems)

    def test_transmon_needs_charging_energy(self):
        config = _config("kind: transmon\ntransmon: {n_max: 20}\nsweep: {values: [1]}\n")
        assert ExperimentRegistry.get("transmon").validate(config)
