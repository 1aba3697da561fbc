"""Tests for model/ - parameters, Hamiltonians, parity and exchange symmetry."""

import logging

import numpy as np
import pytest

from rabibus.errors import InvalidParameterError, ParityClassificationError
from rabibus.linalg import QRS_QUBIT, commutator, embed, pauli
from rabibus.model import (
    QubitParams,
    RabiParams,
    SystemParams,
    build_rabi,
    build_total,
    check_rabi_gap,
    classify_parity,
    named_state,
    parity_operator,
    rabi_eigensystem,
    rabi_gap,
    rabi_parity,
    swap_operator,
    sweep_values,
    two_qubit_state,
)

from helpers import make_pair, make_rabi


# ── Parameters ─────────────────────────────────────────────────────────


class TestParams:
    def test_rabi_rejects_bad_values(self):
        with pytest.raises(InvalidParameterError):
            RabiParams(omega_p=0.0, g_p=0.3)
        with pytest.raises(InvalidParameterError):
            RabiParams(omega_p=0.8, g_p=-0.1)
        with pytest.raises(InvalidParameterError):
            RabiParams(omega_p=0.8, g_p=0.3, n_fock=3)

    def test_qubit_rejects_bad_values(self):
        with pytest.raises(InvalidParameterError):
            QubitParams(omega_q=-0.2, g=0.02)
        with pytest.raises(InvalidParameterError):
            QubitParams(omega_q=0.2, g=-0.02)

    def test_needs_a_qubit(self):
        with pytest.raises(InvalidParameterError):
            SystemParams(make_rabi(), ())

    def test_layout_dimension(self):
        s = make_pair(n_fock=6)
        assert s.layout.total_dim == 2 * 6 * 2 * 2
        assert s.n_qubits == 2

    def test_with_value_delta_sets_both(self):
        s = make_pair().with_value("delta", 0.35)
        assert s.omegas == [0.35, 0.35]

    def test_with_value_single_qubit(self):
        s = make_pair().with_value("omega_q2", 0.19)
        assert s.omegas == [0.2, 0.19]
        assert not s.exchange_symmetric

    def test_with_value_rabi_fields(self):
        s = make_pair().with_value("g_p", 0.45).with_value("n_fock", 9)
        assert s.rabi.g_p == 0.45
        assert s.rabi.n_fock == 9

    def test_with_value_unknown(self):
        with pytest.raises(InvalidParameterError, match="unknown sweep variable"):
            make_pair().with_value("kappa", 1.0)

    def test_with_value_missing_qubit(self):
        with pytest.raises(InvalidParameterError, match="no qubit 3"):
            make_pair().with_value("omega_q3", 0.2)

    def test_exchange_symmetric(self):
        assert make_pair().exchange_symmetric
        assert not make_pair(omega_q2=0.21).exchange_symmetric

    def test_coupling_warnings(self):
        assert make_pair(g=0.02, g_p=0.3).coupling_warnings() == []
        warnings = make_pair(g=0.1, g_p=0.3).coupling_warnings()
        assert len(warnings) == 2
        assert "g1" in warnings[0]

    def test_sweep_values(self):
        params = sweep_values(make_pair(), "g_p", [0.1, 0.2])
        assert [p.rabi.g_p for p in params] == [0.1, 0.2]

    def test_as_dict(self):
        d = make_pair().as_dict()
        assert d["rabi"]["omega_p"] == 0.8
        assert d["qubits"][1]["g"] == 0.02


# ── Hamiltonians ───────────────────────────────────────────────────────


class TestHamiltonians:
    def test_rabi_hermitian(self):
        h = build_rabi(make_rabi(n_fock=8))
        assert h.shape == (16, 16)
        assert np.allclose(h, h.conj().T)

    def test_uncoupled_rabi_levels(self):
        values = np.linalg.eigvalsh(build_rabi(make_rabi(g_p=0.0, n_fock=6)))
        assert np.isclose(values[0], -0.4)
        assert np.isclose(values[1], 0.4)
        assert np.isclose(values[2], 0.6)

    def test_total_hermitian(self):
        h = build_total(make_pair(n_fock=6))
        assert h.shape == (48, 48)
        assert np.allclose(h, h.conj().T)

    def test_decoupled_qubits_shift_ground(self):
        s = SystemParams.two_qubit(0.8, 0.3, 0.2, 0.25, 0.0, 0.0, n_fock=8)
        rabi_ground = np.linalg.eigvalsh(build_rabi(s.rabi))[0]
        total_ground = np.linalg.eigvalsh(build_total(s))[0]
        assert np.isclose(total_ground, rabi_ground - 0.5 * (0.2 + 0.25))

    @pytest.mark.parametrize("g_p,omega_q2", [(0.1, 0.2), (0.3, 0.17), (0.5, 0.4)])
    def test_parity_commutes(self, g_p, omega_q2):
        s = make_pair(g_p=g_p, omega_q2=omega_q2, n_fock=6)
        p = parity_operator(s.layout)
        assert np.allclose(commutator(build_total(s), p), 0.0)

    def test_parity_commutes_random_draws(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            omega_p, g_p, w1, w2 = rng.uniform([0.1, 0.0, 0.05, 0.05], [1.5, 1.0, 1.0, 1.0])
            g1, g2 = rng.uniform(0.0, 0.1, size=2)
            s = SystemParams.two_qubit(omega_p, g_p, w1, w2, g1, g2, n_fock=4)
            assert np.allclose(commutator(build_total(s), parity_operator(s.layout)), 0.0, atol=1e-12)

    def test_singlet_decouples_from_bus(self):
        s = make_pair(g_p=0.3, n_fock=12)
        rabi_eig = rabi_eigensystem(s.rabi)
        psi = named_state("psi_minus", rabi_eig, 0)
        h_psi = build_total(s) @ psi
        energy = np.vdot(psi, h_psi).real
        assert np.linalg.norm(h_psi - energy * psi) < 1e-10
        assert energy == pytest.approx(rabi_eig.values[0], abs=1e-10)

    def test_rabi_parity_commutes(self):
        p = make_rabi(g_p=0.7, n_fock=10)
        assert np.allclose(commutator(build_rabi(p), rabi_parity(p)), 0.0)

    def test_parity_is_involution(self):
        p = parity_operator(make_pair(n_fock=5).layout)
        assert np.allclose(p @ p, np.eye(p.shape[0]))

    def test_swap_symmetry_for_identical_qubits(self):
        s = make_pair(n_fock=6)
        swap = swap_operator(s.layout)
        assert np.allclose(swap @ swap, np.eye(swap.shape[0]))
        assert np.allclose(commutator(build_total(s), swap), 0.0)

    def test_swap_broken_by_detuning(self):
        s = make_pair(omega_q2=0.3, n_fock=6)
        assert not np.allclose(commutator(build_total(s), swap_operator(s.layout)), 0.0)


# ── Parity labels ──────────────────────────────────────────────────────


class TestParity:
    def test_uncoupled_parity_sequence(self):
        eig = rabi_eigensystem(make_rabi(g_p=0.0, n_fock=10))
        assert list(eig.parities[:8]) == [1, -1, -1, 1, 1, -1, -1, 1]

    def test_ground_state_even(self):
        eig = rabi_eigensystem(make_rabi(g_p=0.5, n_fock=20))
        assert eig.parities[0] == 1

    def test_labels_are_signs(self):
        eig = rabi_eigensystem(make_rabi(n_fock=12))
        assert set(np.unique(eig.parities)) <= {-1, 1}

    def test_non_symmetry_fails(self):
        p = make_rabi(g_p=0.0, n_fock=6)
        eig = rabi_eigensystem(p)
        sx = embed(pauli("x"), p.layout, QRS_QUBIT)
        with pytest.raises(ParityClassificationError):
            classify_parity(eig, sx)


# ── Reference states and the QRS gap ───────────────────────────────────


class TestStates:
    def test_two_qubit_kron_order(self):
        assert np.allclose(two_qubit_state("eg"), [0, 1, 0, 0])
        assert np.allclose(two_qubit_state("ge"), [0, 0, 1, 0])
        assert np.allclose(two_qubit_state("gg"), [0, 0, 0, 1])

    def test_unknown_state(self):
        with pytest.raises(InvalidParameterError):
            two_qubit_state("xx")

    def test_named_state_normalized(self):
        s = make_pair(n_fock=6)
        eig = rabi_eigensystem(s.rabi)
        psi = named_state("D21", eig, 1)
        assert psi.shape == (s.layout.total_dim,)
        assert np.isclose(np.linalg.norm(psi), 1.0)

    def test_named_state_level_range(self):
        eig = rabi_eigensystem(make_rabi(n_fock=4))
        with pytest.raises(InvalidParameterError):
            named_state("eg", eig, 8)

    def test_uncoupled_gap(self):
        assert np.isclose(rabi_gap(make_rabi(g_p=0.0, n_fock=6)), 0.8)

    def test_check_rabi_gap_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="rabibus"):
            gap = check_rabi_gap(make_rabi(g_p=0.0, n_fock=6), 1.4)
        assert np.isclose(gap, 0.8)
        assert "differs from the quoted" in caplog.text

    def test_check_rabi_gap_silent_when_close(self, caplog):
        with caplog.at_level(logging.WARNING, logger="rabibus"):
            check_rabi_gap(make_rabi(g_p=0.0, n_fock=6), 0.81)
        assert caplog.text == ""
