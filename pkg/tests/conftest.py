"""Shared fixtures for rabibus tests.

The repository root is the package itself, so it is imported by path
under the name `rabibus`; submodules then resolve through the normal
import system.
"""

import importlib.util
import sys
from pathlib import Path

import pytest

_project_root = Path(__file__).resolve().parent.parent
_tests_dir = Path(__file__).resolve().parent

# Ensure the tests directory is on sys.path so helpers can be imported
if str(_tests_dir) not in sys.path:
    sys.path.insert(0, str(_tests_dir))


def _import_package_from_path(name: str, root: Path):
    """Import a package from its directory, whatever the directory is called."""
    if name in sys.modules:
        return sys.modules[name]
    spec = importlib.util.spec_from_file_location(
        name, root / "__init__.py", submodule_search_locations=[str(root)]
    )
    mod = importlib.util.module_from_spec(spec)
    sys.modules[name] = mod
    spec.loader.exec_module(mod)
    return mod


_import_package_from_path("rabibus", _project_root)


@pytest.fixture
def configs_dir():
    return _project_root / "configs"


@pytest.fixture
def tmp_config_dir(tmp_path):
    cdir = tmp_path / "configs"
    cdir.mkdir()
    (cdir / "user").mkdir()
    return cdir


@pytest.fixture
def spectrum_config_text():
    return (
        "id: tiny-spectrum\n"
        "title: Tiny spectrum\n"
        "kind: spectrum\n"
        "rabi: {omega_p: 0.8, g_p: 0.3, n_fock: 8}\n"
        "qubits:\n"
        "  - {omega_q: 0.2, g: 0.02}\n"
        "  - {omega_q: 0.2, g: 0.02}\n"
        "sweep: {variable: delta, start: 0.1, stop: 0.3, points: 3}\n"
        "spectrum: {levels: 4, detect: false}\n"
    )


@pytest.fixture
def steady_config_text():
    return (
        "id: tiny-steady\n"
        "title: Tiny steady state\n"
        "kind: steady\n"
        "rabi: {omega_p: 0.8, g_p: 0.3, n_fock: 4}\n"
        "qubits:\n"
        "  - {omega_q: 0.2, g: 0.01}\n"
        "  - {omega_q: 0.2, g: 0.01}\n"
        "rates: {gamma_pump: 0.01, gamma_out: 0.1, gamma_x: 0.01, gamma_z: 0.01, gamma_cav: 0.01}\n"
        "sweep: {variable: g_p, values: [0.1, 0.2]}\n"
    )


@pytest.fixture
def populated_config_dir(tmp_config_dir, spectrum_config_text, steady_config_text):
    (tmp_config_dir / "tiny-spectrum.yaml").write_text(spectrum_config_text)
    (tmp_config_dir / "tiny-steady.yaml").write_text(steady_config_text)
    (tmp_config_dir / "user" / "mine.yaml").write_text(
        "kind: transmon\ntransmon: {e_c: 0.0194}\nsweep: {values: [40, 50]}\n"
    )
    return tmp_config_dir
