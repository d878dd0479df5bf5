"""Effective-pure-state preparation by spatial averaging.

Starting from the high-temperature equilibrium deviation matrix, an
rf + gradient sequence turns the three-spin ensemble into a state whose
traceless part transforms exactly like ``|000>``:

    rho0 = 2 |000><000| - I/4
         = Iz1/2 + Iz2/2 + Iz3/2 + Iz1 Iz2 + Iz2 Iz3 + Iz1 Iz3 + 2 Iz1 Iz2 Iz3

Two sequences are provided.  ``verbatim`` is the hardware recipe exactly as
published; simulated, it reaches ``VERBATIM_GAIN * rho0`` plus a residual
carbon-carbon zero-quantum term (Ix1 Ix2 + Iy1 Iy2) that no z-gradient can
dephase, because C1 and C2 share a gyromagnetic ratio.  Exciting both
carbons at once creates the wanted Iz1 Iz2 order and that zero-quantum
coherence in a fixed proportion, so no pulse-phase change can remove one
without the other.  The ``corrected`` default therefore builds the carbon
order asymmetrically (only C1 ever transverse, so no carbon-carbon
zero-quantum coherence can form) and retunes the proton flip angle so both
sectors come out at overall gain exactly +1.
"""

from __future__ import annotations

import numpy as np

from .engine import GradientModel, execute_pulse_program
from .linalg import IZ, basis_ket, embed, projector
from .pulses import Delay, Gradient, PulseProgram, RfPulse
from .spinsys import SpinSystem

#: overall scalar the published sequence actually produces on the rho0 part
VERBATIM_GAIN = -np.sqrt(6.0) / 2.0


def equilibrium_state(sys: SpinSystem) -> np.ndarray:
    """Thermal deviation matrix: each spin's Iz weighted by its gyromagnetic
    ratio (carbon normalized to 1)."""
    rho = np.zeros((sys.dim, sys.dim), dtype=complex)
    for q in range(1, sys.n + 1):
        rho += sys.gamma[q - 1] * embed(IZ, [q], sys.n)
    return rho


def pure_state_target(n: int = 3) -> np.ndarray:
    """The prepared deviation matrix, ``2 |0...0><0...0| - I / 2^(n-1)``."""
    dim = 2**n
    return 2.0 * projector(basis_ket(0, n)) - np.eye(dim, dtype=complex) * (2.0 / dim)


def pure_state_target_product_form(n: int = 3) -> np.ndarray:
    """Same matrix assembled term by term from products of Iz operators."""
    iz = [embed(IZ, [q], n) for q in range(1, n + 1)]
    rho = sum(z / 2.0 for z in iz)
    for a in range(n):
        for b in range(a + 1, n):
            rho = rho + iz[a] @ iz[b]
    if n == 3:
        rho = rho + 2.0 * iz[0] @ iz[1] @ iz[2]
    return rho


def flip_angle(sys: SpinSystem) -> float:
    """Published proton flip angle, arccos(-sqrt(6) * gamma_C / gamma_H):
    the proton z-magnetization surviving the first gradient is -sqrt(6) in
    carbon units, matching the carbon sector's -sqrt(6)/2 gain."""
    return float(np.arccos(-np.sqrt(6.0) * sys.gamma[0] / sys.gamma[2]))


def corrected_flip_angle(sys: SpinSystem) -> float:
    """Proton flip angle of the corrected sequence, arccos(2 * gamma_C /
    gamma_H): leaves proton magnetization +2, matching the corrected carbon
    stage's unit gain."""
    return float(np.arccos(2.0 * sys.gamma[0] / sys.gamma[2]))


def _proton_tail(sys: SpinSystem, alpha: float) -> tuple:
    """Shared back end: tip the proton, crush, then distribute its
    z-magnetization over the carbon-conditioned product terms."""
    j23 = sys.coupling(2, 3)
    j13 = sys.coupling(1, 3)
    return (
        RfPulse((3,), "x", alpha),
        Gradient(),
        RfPulse((3,), "y", np.pi / 4),
        Delay(9.0 / (2.0 * j23), couplings=((2, 3),)),
        Delay(1.0 / (2.0 * j13), couplings=((1, 3),)),
        RfPulse((3,), "y", np.pi / 4),
        Gradient(),
        RfPulse((3,), "y", np.pi / 4),
        Delay(9.0 / (4.0 * j23), couplings=((2, 3),)),
        Delay(1.0 / (4.0 * j13), couplings=((1, 3),)),
        RfPulse((3,), "x", np.pi / 4),
        Gradient(),
    )


def preparation_sequence(sys: SpinSystem, corrected: bool = True) -> PulseProgram:
    """The spatial-averaging prep sequence (see the module docstring for why
    the corrected carbon stage differs from the published one)."""
    j12 = sys.coupling(1, 2)
    if corrected:
        carbon = (
            RfPulse((2,), "x", np.pi / 3),
            Gradient(),
            RfPulse((1,), "x", np.pi / 4),
            Delay(1.0 / (2.0 * j12), couplings=((1, 2),)),
            RfPulse((1,), "y", -np.pi / 4),
        )
        alpha = corrected_flip_angle(sys)
    else:
        carbon = (
            RfPulse((1, 2), "x", np.pi / 4),
            Delay(1.0 / (2.0 * j12), couplings=((1, 2),)),
            RfPulse((1, 2), "y", -5.0 * np.pi / 6.0),
        )
        alpha = flip_angle(sys)
    return PulseProgram(carbon + _proton_tail(sys, alpha))


def prepare_effective_pure_state(
    sys: SpinSystem,
    model: GradientModel | None = None,
    corrected: bool = True,
) -> np.ndarray:
    """Simulate the prep sequence from equilibrium."""
    return execute_pulse_program(
        preparation_sequence(sys, corrected=corrected),
        equilibrium_state(sys),
        sys,
        gradient_model=model,
    )


def preparation_residual(sys: SpinSystem, corrected: bool = True) -> float:
    """Frobenius distance from the simulated prep output to the target.

    The verbatim sequence's output is first divided by its analytic gain so
    the comparison shows only the irreducible zero-quantum artifact."""
    rho = prepare_effective_pure_state(sys, corrected=corrected)
    if not corrected:
        rho = rho / VERBATIM_GAIN
    return float(np.linalg.norm(rho - pure_state_target(sys.n)))
