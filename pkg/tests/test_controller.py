"""Tests for controller.py and cli.py - runs, output files and exit codes."""

import logging

import numpy as np
import pytest
import yaml

from rabibus import cli
from rabibus.controller import (
    ExperimentController,
    WarningCollector,
    column_deltas,
    manifest_path,
    to_builtin,
    write_csv,
)
from rabibus.errors import ConfigError
from rabibus.experiments import ExperimentCatalog, ExperimentResult

from helpers import write_config


@pytest.fixture
def controller(populated_config_dir, tmp_path):
    return ExperimentController(ExperimentCatalog(populated_config_dir), out_dir=tmp_path / "out", threads=2)


# ── Output helpers ─────────────────────────────────────────────────────


class TestOutputHelpers:
    def test_write_csv_format(self, tmp_path):
        path = tmp_path / "table.csv"
        write_csv(path, ExperimentResult(columns=["a", "b"], rows=np.array([[0.1, 1.0 / 3.0]])))
        assert path.read_bytes() == b"a,b\n0.1,0.333333333333\n"

    def test_write_csv_leaves_no_temp_files(self, tmp_path):
        write_csv(tmp_path / "t.csv", ExperimentResult(columns=["x"], rows=np.array([[1.0], [2.0]])))
        assert [p.name for p in tmp_path.iterdir()] == ["t.csv"]

    def test_manifest_path(self, tmp_path):
        assert manifest_path(tmp_path / "run.csv") == tmp_path / "run.manifest.yaml"

    def test_to_builtin(self):
        value = to_builtin({"a": np.float64(1.5), "b": np.arange(3), "c": (np.int64(2), "x"), 4: None})
        assert value == {"a": 1.5, "b": [0, 1, 2], "c": [2, "x"], "4": None}
        assert type(value["a"]) is float

    def test_column_deltas(self):
        coarse = ExperimentResult(columns=["x", "y"], rows=np.array([[0.0, 1.0], [1.0, 2.0]]))
        fine = ExperimentResult(columns=["x", "y"], rows=np.array([[0.0, 1.5], [1.0, 1.9]]))
        assert column_deltas(coarse, fine) == pytest.approx({"x": 0.0, "y": 0.5})

    def test_column_deltas_shape_mismatch(self):
        coarse = ExperimentResult(columns=["x"], rows=np.zeros((2, 1)))
        fine = ExperimentResult(columns=["x"], rows=np.zeros((3, 1)))
        with pytest.raises(ConfigError):
            column_deltas(coarse, fine)

    def test_warning_collector(self):
        collector = WarningCollector()
        logger = logging.getLogger("rabibus")
        logger.addHandler(collector)
        try:
            logger.info("quiet")
            logger.warning("loud %d", 1)
        finally:
            logger.removeHandler(collector)
        assert collector.messages == ["loud 1"]


# ── ExperimentController ───────────────────────────────────────────────


class TestController:
    def test_run_writes_csv_and_manifest(self, controller, tmp_path):
        path = controller.run("tiny-spectrum")
        assert path == tmp_path / "out" / "tiny-spectrum.csv"
        lines = path.read_text().splitlines()
        assert lines[0].split(",")[:2] == ["delta", "E0"]
        assert len(lines[0].split(",")) == 13
        assert len(lines) == 4

        manifest = yaml.safe_load(manifest_path(path).read_text())
        assert manifest["id"] == "tiny-spectrum"
        assert manifest["kind"] == "spectrum"
        assert manifest["version"] == "0.1.0"
        assert manifest["rows"] == 3
        assert manifest["parameters"]["sweep"]["variable"] == "delta"
        assert manifest["tolerances"]["degeneracy"] == 1e-9

    def test_runs_are_deterministic(self, populated_config_dir, tmp_path):
        outputs = []
        for name in ("a", "b"):
            c = ExperimentController(ExperimentCatalog(populated_config_dir), out_dir=tmp_path / name, threads=3)
            outputs.append(c.run("tiny-spectrum").read_bytes())
        assert outputs[0] == outputs[1]

    def test_run_steady(self, controller):
        path = controller.run("tiny-steady")
        assert path.read_text().splitlines()[0] == "g_p,n1_ss,n2_ss"
        manifest = yaml.safe_load(manifest_path(path).read_text())
        assert manifest["parameters"]["rates"]["gamma_out"] == 0.1
        assert "relative_variation" in manifest["summary"]

    def test_manifest_records_reproduced_result(self, controller, tmp_path, spectrum_config_text):
        text = spectrum_config_text + "reproduces: \"three levels near delta = 0.2\"\n"
        path = controller.run(str(write_config(tmp_path, "tagged.yaml", text)))
        manifest = yaml.safe_load(manifest_path(path).read_text())
        assert manifest["reproduces"] == "three levels near delta = 0.2"
        assert list(manifest)[:4] == ["id", "kind", "title", "reproduces"]

    def test_run_by_path_with_output_name(self, controller, tmp_path, spectrum_config_text):
        path = write_config(tmp_path, "named.yaml", spectrum_config_text + "output: levels.csv\n")
        assert controller.run(str(path)) == tmp_path / "out" / "levels.csv"

    def test_list(self, controller):
        assert {e["id"] for e in controller.list_experiments()} == {"tiny-spectrum", "tiny-steady", "mine"}

    def test_malformed_config_writes_nothing(self, controller, tmp_path):
        path = write_config(tmp_path, "bad.yaml", "kind: spectrum\nrabi: {omega_p: -1.0}\nsweep: {values: [0.1]}\n")
        assert controller.run_many([str(path)]) == 2
        assert not (tmp_path / "out").exists()

    def test_missing_file_exit_code(self, controller, tmp_path):
        assert controller.run_many([str(tmp_path / "absent.yaml")]) == 2

    def test_unknown_id_exit_code(self, controller):
        assert controller.run_many(["no-such-config"]) == 2

    def test_run_many_keeps_going(self, controller, tmp_path):
        assert controller.run_many(["no-such-config", "tiny-spectrum"]) == 2
        assert (tmp_path / "out" / "tiny-spectrum.csv").exists()

    def test_check(self, controller):
        report = controller.check("tiny-spectrum")
        assert report["id"] == "tiny-spectrum"
        assert report["n_fock"] == [8, 16]
        assert set(report["deltas"]) >= {"delta", "E0", "E1"}
        assert report["deltas"]["delta"] == 0.0

    def test_check_needs_cavity(self, controller):
        with pytest.raises(ConfigError):
            controller.check("mine")


# ── Command line ───────────────────────────────────────────────────────


class TestCli:
    def test_list(self, capsys):
        assert cli.main(["list"]) == 0
        out = capsys.readouterr().out
        assert "steady-identical" in out
        assert "transmon-chain" in out

    def test_list_shows_reproduced_result(self, capsys):
        assert cli.main(["list"]) == 0
        out = capsys.readouterr().out
        assert "reproduces: qubit-2 steady excitation enhanced about sevenfold at g_p = 0.5" in out
        assert out.count("reproduces:") == 16

    def test_help_names_config_format(self):
        text = cli.build_parser().format_help()
        assert "YAML" in text
        assert "TOML" in text

    def test_run_bad_config(self, tmp_path):
        path = write_config(tmp_path, "bad.yaml", "kind: spectrun\n")
        assert cli.main(["run", str(path), "-o", str(tmp_path / "out")]) == 2
        assert not (tmp_path / "out").exists()

    def test_run_writes_to_out_dir(self, tmp_path, spectrum_config_text):
        path = write_config(tmp_path, "tiny.yaml", spectrum_config_text)
        assert cli.main(["run", str(path), "--out-dir", str(tmp_path / "out")]) == 0
        assert (tmp_path / "out" / "tiny-spectrum.csv").exists()
        assert (tmp_path / "out" / "tiny-spectrum.manifest.yaml").exists()

    def test_check_transmon_fan(self):
        assert cli.main(["check", "transmon-fan"]) == 2

    def test_requires_command(self):
        with pytest.raises(SystemExit):
            cli.main([])
