"""End-to-end experiment runs tying the two layers together."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .compiler import compile_network
from .engine import GradientModel, NoiseParams, execute_pulse_program
from .linalg import apply_unitary, measure_distribution
from .prep import prepare_effective_pure_state
from .protocol import ProtocolParams, QcsOutcome, estimate_delta, qcs_unitary, run_qcs
from .spinsys import SpinSystem
from .tomography import FidelityReport, fidelity


@dataclass(frozen=True)
class NmrRunResult:
    """Outcome of one compiled-hardware run."""

    outcome: QcsOutcome
    fidelity: FidelityReport
    rho_final: np.ndarray
    rho_theory: np.ndarray
    rho_initial: np.ndarray


def run_ideal(params: ProtocolParams) -> QcsOutcome:
    return run_qcs(params)


def pure_part(rho: np.ndarray) -> np.ndarray:
    """Unit-trace state carried by a deviation matrix in the prepared
    normalization rho = 2 sigma - I / 2^(n-1)."""
    dim = rho.shape[0]
    return (rho + np.eye(dim) * (2.0 / dim)) / 2.0


def run_nmr(
    params: ProtocolParams,
    sys: SpinSystem | None = None,
    noise: NoiseParams | None = None,
    gradient_model: GradientModel | None = None,
) -> NmrRunResult:
    """Prepare the effective-pure state, run the compiled network, and score
    the result against the ideal layer."""
    sys = sys or SpinSystem()
    rho_initial = prepare_effective_pure_state(sys, model=gradient_model)
    program = compile_network(params, sys)
    rho_final = execute_pulse_program(
        program, rho_initial, sys, noise=noise, gradient_model=gradient_model
    )
    rho_theory = apply_unitary(rho_initial, qcs_unitary(params))
    report = fidelity(rho_theory, rho_final, rho_initial)

    distribution = measure_distribution(pure_part(rho_final), [1, 2])
    probs = [distribution[format(j, "02b")] for j in range(4)]
    j_peak = int(np.argmax(probs))
    scaled = 4.0 * params.omega_delta
    outcome = QcsOutcome(
        distribution=distribution,
        j_peak=j_peak,
        delta_estimate=estimate_delta(j_peak, params),
        exact=abs(scaled - round(scaled)) < 1e-9,
    )
    return NmrRunResult(
        outcome=outcome,
        fidelity=report,
        rho_final=rho_final,
        rho_theory=rho_theory,
        rho_initial=rho_initial,
    )


def dephasing_ramp(
    params: ProtocolParams,
    rates: list[float],
    sys: SpinSystem | None = None,
    seed: int = 0,
    pulse_angle_error: float = 0.0,
) -> list[float]:
    """Fidelity of the compiled run at each dephasing rate of a ramp."""
    sys = sys or SpinSystem()
    out = []
    for rate in rates:
        noise = NoiseParams.uniform(
            rate, n=sys.n, pulse_angle_error=pulse_angle_error, seed=seed
        )
        out.append(run_nmr(params, sys, noise=noise).fidelity.c)
    return out
