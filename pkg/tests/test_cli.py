import json

import numpy as np
import pytest

from qclocksync.cli import main
from qclocksync.engine import propagator
from qclocksync.linalg import phase_aligned, random_hermitian
from qclocksync.pulses import from_text
from qclocksync.serialize import (
    dump_matrix,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
)
from qclocksync.spinsys import SpinSystem


def test_matrix_json_round_trip(tmp_path):
    rng = np.random.default_rng(31)
    m = random_hermitian(8, rng)
    np.testing.assert_allclose(matrix_from_json(matrix_to_json(m)), m, atol=0)
    path = tmp_path / "rho.json"
    dump_matrix(m, path)
    np.testing.assert_allclose(load_matrix(path), m, atol=0)
    with pytest.raises(ValueError):
        matrix_to_json(np.zeros((2, 3)))


def test_run_ideal_report(tmp_path):
    out = tmp_path / "run.json"
    assert main(["run", "--mode", "ideal", "--m", "2", "--phi-k", "1",
                 "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    assert payload["outcome"]["j_peak"] == 1
    assert payload["outcome"]["delta_estimate"] == pytest.approx(0.25)


def test_run_ideal_zero_offset(capsys):
    assert main(["run", "--mode", "ideal", "--m", "2", "--omega-delta", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["outcome"]["j_peak"] == 0
    assert payload["outcome"]["distribution"]["00"] == pytest.approx(1.0)


def test_run_nmr_report(tmp_path):
    out = tmp_path / "nmr.json"
    assert main(["run", "--mode", "nmr", "--phi-k", "2", "--noise", "off",
                 "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["fidelity"]["c"] >= 0.999
    rho = matrix_from_json(payload["rho_final"])
    assert rho.shape == (8, 8)


def test_run_nmr_rejects_other_register_sizes():
    with pytest.raises(SystemExit):
        main(["run", "--mode", "nmr", "--m", "3", "--phi-k", "1"])


def test_compile_gate_round_trip(tmp_path, capsys):
    assert main(["compile", "--gate", "phase11"]) == 0
    text = capsys.readouterr().out
    program = from_text(text)
    sys = SpinSystem()
    u1 = propagator(program, sys)
    u2 = propagator(from_text(text), sys)
    np.testing.assert_array_equal(u1, u2)  # bit-for-bit reproducible


def test_compile_network_verify(capsys):
    for k in range(4):
        assert main(["compile", "--network", "qcs", "--phi-k", str(k),
                     "--verify"]) == 0
        capsys.readouterr()


def test_compile_zero_phase_has_no_delay_section(capsys):
    assert main(["compile", "--network", "qcs", "--phi-k", "0"]) == 0
    program = from_text(capsys.readouterr().out)
    # only the controlled-phase gate's refocused delay remains
    delays = [s for s in program.steps if hasattr(s, "duration")]
    assert sum(s.duration for s in delays) == pytest.approx(
        1.0 / (4.0 * 103.1), rel=1e-12
    )


def test_reproduce_report(tmp_path, capsys):
    out = tmp_path / "report.md"
    assert main(["reproduce", "--output", str(out)]) == 0
    capsys.readouterr()
    text = out.read_text()
    assert "ALL PASS" in text
    payload = json.loads((tmp_path / "report.json").read_text())
    assert payload["all_pass"] is True
    assert len(payload["rows"]) == 4
    for row, ref in zip(payload["rows"], (0.907, 0.774, 0.752, 0.770)):
        assert row["pass"] is True
        assert row["reference_hardware_fidelity"] == pytest.approx(ref)
    assert payload["preparation"]["verbatim_residual_gain_normalized"] > 0.1


def test_spin_system_config_flows_through(tmp_path):
    from qclocksync.spinsys import save_config

    cfg = tmp_path / "spins.cfg"
    save_config(SpinSystem(), cfg)
    out = tmp_path / "run.json"
    assert main(["run", "--mode", "nmr", "--phi-k", "0",
                 "--spin-system", str(cfg), "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["fidelity"]["c"] >= 0.999


def test_noise_flag_parses_rate(tmp_path):
    out = tmp_path / "noisy.json"
    assert main(["run", "--mode", "nmr", "--phi-k", "1", "--noise", "100",
                 "--seed", "3", "--output", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["noise"]["dephasing_rates"] == [100.0, 100.0, 100.0]
    assert payload["fidelity"]["c"] < 0.999
    with pytest.raises(SystemExit):
        main(["run", "--mode", "nmr", "--phi-k", "1", "--noise", "lots"])
