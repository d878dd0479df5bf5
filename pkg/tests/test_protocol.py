import numpy as np
import pytest

from qclocksync.linalg import basis_ket
from qclocksync.protocol import (
    ProtocolParams,
    closed_form_distribution,
    controlled_phase,
    controlled_phase_gate,
    estimate_delta,
    hadamard_all,
    inverse_qft_reduced,
    qcs_unitary,
    run_qcs,
    t_operation,
    tqh_phase,
)


def test_params_validation_and_derived_quantities():
    p = ProtocolParams(m=2, omega=2.0, delta=0.125)
    assert p.omega_delta == pytest.approx(0.25)
    assert p.phi == pytest.approx(-np.pi / 2)
    with pytest.raises(ValueError):
        ProtocolParams(m=0)


def test_from_phi_index_covers_the_four_offsets():
    for k in range(4):
        p = ProtocolParams.from_phi_index(k)
        assert p.omega_delta == pytest.approx(k / 4.0)
        assert p.phi == pytest.approx(-k * np.pi / 2.0)


def test_tqh_phase_is_diagonal_conjugate_pair():
    p = ProtocolParams(m=2, delta=0.3)
    for layer in range(2):
        u = tqh_phase(layer, p)
        theta = 2**layer * np.pi * p.omega_delta
        np.testing.assert_allclose(
            np.diag(u),
            [np.exp(-1j * theta), 1.0, 1.0, np.exp(1j * theta)],
            atol=1e-14,
        )


def test_t_operation_writes_index_phases():
    # after Hadamards, T must put the relative phase exp(2*pi*i*k*wd) on the
    # working component of index k; verify on the uniform input state
    p = ProtocolParams(m=3, delta=0.2137)
    psi = t_operation(p) @ hadamard_all(3) @ basis_ket(0, 4)
    amps = psi.reshape(8, 2)[:, 0] * np.sqrt(8)
    phases = amps / amps[0]
    for b in range(8):
        k = int(format(b, "03b")[::-1], 2)
        assert phases[b] == pytest.approx(
            np.exp(2j * np.pi * k * p.omega_delta), abs=1e-12
        )


def test_controlled_phase_matches_printed_gate():
    np.testing.assert_allclose(
        controlled_phase(-np.pi / 2), controlled_phase_gate(), atol=1e-15
    )


def test_inverse_qft_reduced_is_bit_reversed_fourier():
    for m in range(1, 5):
        dim = 2**m
        u = inverse_qft_reduced(m)
        for j in range(dim):
            for b in range(dim):
                rev = int(format(b, f"0{m}b")[::-1], 2)
                expected = np.exp(-2j * np.pi * j * rev / dim) / np.sqrt(dim)
                assert u[j, b] == pytest.approx(expected, abs=1e-12)


def test_run_qcs_recovers_exact_offsets():
    for m in (2, 3):
        for j in range(2**m):
            p = ProtocolParams(m=m, delta=j / 2**m)
            out = run_qcs(p)
            assert out.exact
            assert out.j_peak == j
            assert out.delta_estimate == pytest.approx(j / 2**m)


def test_run_qcs_distribution_sums_to_one():
    rng = np.random.default_rng(7)
    for _ in range(20):
        p = ProtocolParams(m=3, delta=float(rng.uniform()))
        out = run_qcs(p)
        assert sum(out.distribution.values()) == pytest.approx(1.0, abs=1e-12)
        assert not out.exact or min(out.distribution.values()) >= -1e-15


def test_closed_form_matches_unitary_path():
    rng = np.random.default_rng(8)
    for m in (1, 2, 3):
        p = ProtocolParams(m=m, delta=float(rng.uniform()))
        run = run_qcs(p).distribution
        closed = closed_form_distribution(p)
        for key in run:
            assert run[key] == pytest.approx(closed[key], abs=1e-12)


def test_qcs_unitary_is_unitary():
    p = ProtocolParams(m=2, delta=0.37)
    u = qcs_unitary(p)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(8), atol=1e-12)


def test_estimate_delta_range_check():
    p = ProtocolParams(m=2)
    assert estimate_delta(3, p) == pytest.approx(0.75)
    with pytest.raises(ValueError):
        estimate_delta(4, p)
