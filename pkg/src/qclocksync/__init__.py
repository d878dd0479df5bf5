"""Two-layer simulator of a quantum clock-synchronization protocol.

The ideal layer runs the phase-estimation network that maps a clock offset
onto a computational-basis readout.  The hardware layer compiles the same
network to rf pulse sequences over a three-spin NMR molecule, prepares an
effective-pure initial state by spatial averaging, and scores the result
with a deviation-matrix fidelity.
"""

from .compiler import (
    GATE_NAMES,
    compile_gate,
    compile_network,
    compile_t_phases,
    composite_z_rotation,
    ideal_gate,
    ideal_network_unitary,
    ideal_t_phase_compound,
    refocused_delay_schedule,
    t_phase_durations,
)
from .engine import (
    GradientModel,
    NoiseParams,
    coherence_orders,
    execute_pulse_program,
    gradient_pulse,
    propagator,
)
from .experiments import NmrRunResult, dephasing_ramp, pure_part, run_ideal, run_nmr
from .prep import (
    VERBATIM_GAIN,
    corrected_flip_angle,
    equilibrium_state,
    flip_angle,
    preparation_residual,
    preparation_sequence,
    prepare_effective_pure_state,
    pure_state_target,
)
from .protocol import (
    ProtocolParams,
    QcsOutcome,
    closed_form_distribution,
    estimate_delta,
    inverse_qft_reduced,
    qcs_network,
    qcs_unitary,
    run_qcs,
    t_operation,
    t_operation_diagonal,
)
from .pulses import Delay, Gradient, PulseProgram, RfPulse, ZRotation
from .serialize import matrix_from_json, matrix_to_json
from .spinsys import SpinSystem, hamiltonian, load_config, save_config
from .tomography import (
    FidelityReport,
    TomographyPlan,
    fidelity,
    readout_oracle,
    reconstruct,
)

__version__ = "0.1.0"

__all__ = [
    "GATE_NAMES",
    "VERBATIM_GAIN",
    "Delay",
    "FidelityReport",
    "Gradient",
    "GradientModel",
    "NmrRunResult",
    "NoiseParams",
    "ProtocolParams",
    "PulseProgram",
    "QcsOutcome",
    "RfPulse",
    "SpinSystem",
    "TomographyPlan",
    "ZRotation",
    "closed_form_distribution",
    "coherence_orders",
    "compile_gate",
    "compile_network",
    "compile_t_phases",
    "composite_z_rotation",
    "corrected_flip_angle",
    "dephasing_ramp",
    "equilibrium_state",
    "estimate_delta",
    "execute_pulse_program",
    "fidelity",
    "flip_angle",
    "gradient_pulse",
    "hamiltonian",
    "ideal_gate",
    "ideal_network_unitary",
    "ideal_t_phase_compound",
    "inverse_qft_reduced",
    "load_config",
    "matrix_from_json",
    "matrix_to_json",
    "preparation_residual",
    "preparation_sequence",
    "prepare_effective_pure_state",
    "propagator",
    "pure_part",
    "pure_state_target",
    "qcs_network",
    "qcs_unitary",
    "readout_oracle",
    "reconstruct",
    "refocused_delay_schedule",
    "run_ideal",
    "run_nmr",
    "run_qcs",
    "save_config",
    "t_operation",
    "t_operation_diagonal",
    "t_phase_durations",
]
