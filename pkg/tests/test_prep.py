import numpy as np
import pytest

from qclocksync.engine import GradientModel, execute_pulse_program, gradient_pulse
from qclocksync.linalg import IX, IY, embed
from qclocksync.prep import (
    VERBATIM_GAIN,
    corrected_flip_angle,
    equilibrium_state,
    flip_angle,
    preparation_residual,
    preparation_sequence,
    prepare_effective_pure_state,
    pure_state_target,
    pure_state_target_product_form,
)
from qclocksync.spinsys import SpinSystem


@pytest.fixture
def sys():
    return SpinSystem()


def test_equilibrium_state_weights(sys):
    rho = equilibrium_state(sys)
    assert np.trace(rho) == pytest.approx(0.0, abs=1e-12)
    # proton polarization outweighs each carbon by the gyromagnetic ratio
    assert rho[0, 0].real == pytest.approx((1.0 + 1.0 + 3.9777) / 2.0)


def test_target_forms_agree():
    np.testing.assert_allclose(
        pure_state_target(), pure_state_target_product_form(), atol=1e-12
    )
    target = pure_state_target()
    assert np.trace(target).real == pytest.approx(0.0, abs=1e-12)
    assert target[0, 0].real == pytest.approx(2.0 - 0.25)


def test_flip_angles(sys):
    assert flip_angle(sys) == pytest.approx(
        np.arccos(-np.sqrt(6.0) / 3.9777), abs=1e-12
    )
    assert corrected_flip_angle(sys) == pytest.approx(
        np.arccos(2.0 / 3.9777), abs=1e-12
    )


def test_corrected_sequence_reaches_target(sys):
    rho = prepare_effective_pure_state(sys)
    np.testing.assert_allclose(rho, pure_state_target(), atol=1e-5)
    assert preparation_residual(sys, corrected=True) <= 1e-5


def test_verbatim_sequence_gain_and_artifact(sys):
    rho = prepare_effective_pure_state(sys, corrected=False)
    target = pure_state_target()
    residual = rho / VERBATIM_GAIN - target
    # the leftover is exactly the carbon-carbon zero-quantum term, which a
    # z-gradient cannot remove because C1 and C2 share a gyromagnetic ratio
    zq = embed(IX, [1], 3) @ embed(IX, [2], 3) + embed(IY, [1], 3) @ embed(IY, [2], 3)
    coeff = np.trace(residual @ zq).real / np.trace(zq @ zq).real
    np.testing.assert_allclose(residual, coeff * zq, atol=1e-9)
    assert preparation_residual(sys, corrected=False) == pytest.approx(0.5, abs=1e-9)
    assert gradient_pulse(residual, GradientModel(), sys) is not None
    np.testing.assert_allclose(
        gradient_pulse(residual, GradientModel(), sys), residual, atol=1e-12
    )


def test_sequences_use_gradients(sys):
    assert preparation_sequence(sys).has_gradient()
    assert preparation_sequence(sys, corrected=False).has_gradient()


def test_preparation_is_gradient_stable(sys):
    # a final crusher is part of the sequence, so another one changes nothing
    rho = prepare_effective_pure_state(sys)
    np.testing.assert_allclose(
        gradient_pulse(rho, GradientModel(), sys), rho, atol=1e-12
    )
