"""Pulse-level simulation: step propagators, gradient channel, noise model.

Rotation conventions (these make the hardware pulse identities hold verbatim
as written left-to-right in time):

* rf pulse ``[theta]_a`` on a set of spins applies ``exp(+i theta sum I_a)``;
* a frame z-rotation of angle ``phi`` applies ``exp(+i phi Iz)``;
* a delay of length ``t`` applies ``exp(-i H t)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import IX, IY, IZ, embed, matrix_exp
from .pulses import Delay, Gradient, PulseProgram, RfPulse, ZRotation
from .spinsys import SpinSystem, coupling_hamiltonian, hamiltonian

_AXIS_OPS = {"x": IX, "y": IY, "-x": -IX, "-y": -IY}


@dataclass(frozen=True)
class NoiseParams:
    """Parametric imperfection model: per-spin dephasing during delays plus a
    systematic fractional over/under-rotation of every rf pulse."""

    dephasing_rates: tuple[float, ...] = (0.0, 0.0, 0.0)
    pulse_angle_error: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if any(r < 0 for r in self.dephasing_rates):
            raise ValueError("dephasing rates must be nonnegative")
        if not -0.5 < self.pulse_angle_error < 0.5:
            raise ValueError("pulse angle error must lie in (-0.5, 0.5)")

    @classmethod
    def uniform(cls, rate: float, n: int = 3, **kwargs) -> "NoiseParams":
        return cls(dephasing_rates=(rate,) * n, **kwargs)


@dataclass(frozen=True)
class GradientModel:
    """z-gradient crusher: keeps only matrix elements of gamma-weighted
    coherence order zero.  Idempotent and trace preserving by construction."""

    tolerance: float = 1e-9


def _spin_bits(n: int) -> np.ndarray:
    """(dim, n) array of m_z quantum numbers (+1/2 for |0>, -1/2 for |1>)."""
    idx = np.arange(2**n)
    bits = (idx[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1
    return 0.5 - bits.astype(float)


def coherence_orders(sys: SpinSystem) -> np.ndarray:
    """Gamma-weighted coherence order p(a, b) for every matrix element."""
    mz = _spin_bits(sys.n)
    weighted = mz @ np.asarray(sys.gamma, dtype=float)
    return weighted[:, None] - weighted[None, :]


def gradient_pulse(
    rho: np.ndarray, model: GradientModel, sys: SpinSystem
) -> np.ndarray:
    """Dephase every element with nonzero gamma-weighted coherence order."""
    p = coherence_orders(sys)
    out = rho.copy()
    out[np.abs(p) > model.tolerance] = 0.0
    return out


def rf_pulse_unitary(
    step: RfPulse, sys: SpinSystem, noise: NoiseParams | None = None
) -> np.ndarray:
    angle = step.angle
    if noise is not None:
        angle *= 1.0 + noise.pulse_angle_error
    op = _AXIS_OPS[step.axis]
    generator = np.zeros((sys.dim, sys.dim), dtype=complex)
    for t in step.targets:
        if not 1 <= t <= sys.n:
            raise ValueError(f"pulse target {t} outside the {sys.n}-spin register")
        generator += embed(op, [t], sys.n)
    return matrix_exp(generator, -angle)  # exp(+i * angle * sum I_axis)


def z_rotation_unitary(step: ZRotation, sys: SpinSystem) -> np.ndarray:
    return matrix_exp(embed(IZ, [step.target], sys.n), -step.angle)


def delay_unitary(step: Delay, sys: SpinSystem) -> np.ndarray:
    if step.couplings is None:
        h = hamiltonian(sys)
    else:
        h = coupling_hamiltonian(sys, list(step.couplings))
    return matrix_exp(h, step.duration)


def _dephasing_factors(
    step: Delay, sys: SpinSystem, noise: NoiseParams
) -> np.ndarray:
    """Elementwise damping exp(-rate_j * t) on every element in which spin j
    is in coherence (bra and ket spin states differ)."""
    mz = _spin_bits(sys.n)
    rates = np.asarray(noise.dephasing_rates, dtype=float)
    if rates.shape != (sys.n,):
        raise ValueError("need one dephasing rate per spin")
    exponent = np.zeros((sys.dim, sys.dim))
    for q in range(sys.n):
        differs = np.abs(mz[:, None, q] - mz[None, :, q]) > 0
        exponent += rates[q] * step.duration * differs
    return np.exp(-exponent)


def step_unitary(
    step: RfPulse | Delay | ZRotation,
    sys: SpinSystem,
    noise: NoiseParams | None = None,
) -> np.ndarray:
    if isinstance(step, RfPulse):
        return rf_pulse_unitary(step, sys, noise)
    if isinstance(step, Delay):
        return delay_unitary(step, sys)
    if isinstance(step, ZRotation):
        return z_rotation_unitary(step, sys)
    raise TypeError(f"no unitary for step {step!r}")


def execute_pulse_program(
    program: PulseProgram,
    rho: np.ndarray,
    sys: SpinSystem,
    noise: NoiseParams | None = None,
    gradient_model: GradientModel | None = None,
) -> np.ndarray:
    """Apply each step of the program in order to a deviation density matrix."""
    if rho.shape != (sys.dim, sys.dim):
        raise ValueError(f"state shape {rho.shape} does not match {sys.n} spins")
    model = gradient_model or GradientModel()
    for step in program.steps:
        if isinstance(step, Gradient):
            rho = gradient_pulse(rho, model, sys)
            continue
        u = step_unitary(step, sys, noise)
        rho = u @ rho @ u.conj().T
        if isinstance(step, Delay) and noise is not None:
            rho = rho * _dephasing_factors(step, sys, noise)
    return rho


def propagator(
    program: PulseProgram, sys: SpinSystem, noise: NoiseParams | None = None
) -> np.ndarray:
    """Net unitary of a gradient-free program (first step rightmost)."""
    if program.has_gradient():
        raise ValueError("gradient steps have no unitary propagator")
    u = np.eye(sys.dim, dtype=complex)
    for step in program.steps:
        u = step_unitary(step, sys, noise) @ u
    return u
