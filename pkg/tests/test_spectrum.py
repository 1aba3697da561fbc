"""Tests for model/spectrum.py - labelled spectra and avoided-crossing detection."""

import numpy as np
import pytest

from rabibus.effective import chi_elements
from rabibus.errors import InvalidParameterError
from rabibus.model import (
    find_avoided_crossings,
    rabi_eigensystem,
    rabi_spectrum_point,
    spectrum_point,
    spectrum_scan,
)

from helpers import make_pair, make_rabi


def _two_level(gap):
    """Levels +-sqrt(x^2 + (gap/2)^2) in a single sector."""
    def evaluate(x):
        half = np.sqrt(x * x + 0.25 * gap * gap)
        return np.array([-half, half]), np.zeros(2, dtype=int)
    return evaluate


def _tabulate(grid, evaluate):
    rows = [evaluate(x) for x in grid]
    return np.array([r[0] for r in rows]), np.array([r[1] for r in rows])


# ── Spectrum points ────────────────────────────────────────────────────


class TestSpectrumPoint:
    def test_energies_ascending(self):
        point = spectrum_point(make_pair(n_fock=6), m=6)
        assert point.energies.shape == (6,)
        assert np.all(np.diff(point.energies) >= 0)
        assert set(np.unique(point.parities)) <= {-1, 1}
        assert point.exchange is None

    def test_exchange_labels(self):
        point = spectrum_point(make_pair(n_fock=6), m=6, exchange=True)
        assert set(np.unique(point.exchange)) <= {-1, 1}
        assert np.array_equal(point.sectors, 2 * point.parities + point.exchange)

    def test_m_clipped_to_dimension(self):
        point = rabi_spectrum_point(make_rabi(n_fock=4), m=50)
        assert point.energies.shape == (8,)

    def test_converged_in_cavity_truncation(self):
        coarse = spectrum_point(make_pair(omega_q2=0.25, n_fock=20), m=8)
        fine = spectrum_point(make_pair(omega_q2=0.25, n_fock=30), m=8)
        assert np.allclose(coarse.energies, fine.energies, atol=1e-8)
        assert np.array_equal(coarse.parities, fine.parities)

    def test_rabi_point_parities(self):
        point = rabi_spectrum_point(make_rabi(g_p=0.0, n_fock=10), m=4)
        assert list(point.parities) == [1, -1, -1, 1]


# ── Avoided crossings ──────────────────────────────────────────────────


class TestAvoidedCrossings:
    def test_refines_synthetic_anticrossing(self):
        evaluate = _two_level(0.02)
        grid = np.linspace(-1.0, 1.0, 21)
        energies, sectors = _tabulate(grid, evaluate)
        crossings = find_avoided_crossings(grid, energies, sectors, evaluate)
        assert len(crossings) == 1
        c = crossings[0]
        assert abs(c.location) < 1e-6
        assert c.gap == pytest.approx(0.02, rel=1e-6)
        assert c.energy == pytest.approx(0.01, rel=1e-4)
        assert c.sector == 0
        assert c.level == 0

    def test_true_crossing_discarded(self):
        def evaluate(x):
            return np.sort(np.array([-x, x])), np.zeros(2, dtype=int)

        grid = np.linspace(-1.0, 1.0, 20)
        energies, sectors = _tabulate(grid, evaluate)
        assert find_avoided_crossings(grid, energies, sectors, evaluate) == []

    def test_different_sectors_ignored(self):
        def evaluate(x):
            e = np.array([-abs(x), abs(x)])
            return e, np.array([0, 1])

        grid = np.linspace(-1.0, 1.0, 21)
        energies, sectors = _tabulate(grid, evaluate)
        assert find_avoided_crossings(grid, energies, sectors, evaluate) == []

    def test_short_grid(self):
        evaluate = _two_level(0.1)
        grid = np.array([0.0, 1.0])
        energies, sectors = _tabulate(grid, evaluate)
        assert find_avoided_crossings(grid, energies, sectors, evaluate) == []

    def test_non_increasing_grid(self):
        evaluate = _two_level(0.1)
        grid = np.array([0.0, 0.5, 0.4])
        energies, sectors = _tabulate(grid, evaluate)
        with pytest.raises(InvalidParameterError):
            find_avoided_crossings(grid, energies, sectors, evaluate)


# ── Scans ──────────────────────────────────────────────────────────────


class TestSpectrumScan:
    def test_scan_shapes(self):
        scan = spectrum_scan(make_pair(n_fock=6), "delta", [0.1, 0.2, 0.3], m=4, detect=False)
        assert scan.energies.shape == (3, 4)
        assert scan.exchange is not None
        assert np.allclose(scan.relative_energies[:, 0], 0.0)
        assert scan.crossings == []
        assert scan.first_crossing() is None

    def test_detuned_scan_skips_exchange(self):
        scan = spectrum_scan(make_pair(n_fock=6), "omega_q2", [0.15, 0.2, 0.25], m=4, detect=False)
        assert scan.exchange is None

    def test_empty_grid(self):
        with pytest.raises(InvalidParameterError):
            spectrum_scan(make_pair(n_fock=6), "delta", [])

    @pytest.mark.slow
    def test_identical_qubit_crossing(self):
        s = make_pair(g_p=0.3, n_fock=20)
        scan = spectrum_scan(s, "delta", np.linspace(0.5, 0.7, 41), m=8)
        assert any(abs(c.location - 0.6042) < 1e-3 for c in scan.crossings)

    @pytest.mark.slow
    def test_crossing_gap_from_bus_matrix_element(self):
        s = make_pair(g_p=0.3, n_fock=20)
        scan = spectrum_scan(s, "delta", np.linspace(0.5, 0.7, 41), m=8)
        crossing = min(scan.crossings, key=lambda c: abs(c.location - 0.6042))
        chi01 = abs(chi_elements(rabi_eigensystem(s.rabi), 2)[0, 1])
        assert crossing.gap == pytest.approx(2.0 * np.sqrt(2.0) * 0.02 * chi01, rel=0.01)
