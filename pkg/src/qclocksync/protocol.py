"""Ideal gate-level clock-synchronization protocol.

The register holds m working qubits plus one ancilla (qubit m+1, kept in
``|0>``).  Working qubit l+1 carries bit k_l of the phase index
k = sum_l 2^l k_l, so the register label reads the bits of k in reversed
order.  The reduced inverse Fourier transform absorbs that bit reversal, and
the measured working-qubit bitstring (qubit 1 = MSB) is the estimate j
directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import CNOT, HADAMARD, basis_ket, embed

#: the phase index k of the hardware experiments maps to omega*delta = k / 2^m
PHI_STEP = np.pi / 2


@dataclass(frozen=True)
class ProtocolParams:
    """Protocol configuration: m working qubits, tick frequency, true offset."""

    m: int
    omega: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one working qubit")
        if self.omega <= 0:
            raise ValueError("tick frequency must be positive")

    @property
    def omega_delta(self) -> float:
        return self.omega * self.delta

    @property
    def phi(self) -> float:
        """Ancilla-sandwich z-rotation angle; -pi/2 per unit of 2^m*omega*delta."""
        return -2.0 * np.pi * self.omega_delta

    @classmethod
    def from_phi_index(cls, k: int, m: int = 2, omega: float = 1.0) -> "ProtocolParams":
        """The discrete experiments: index k means omega*delta = k / 2^m."""
        return cls(m=m, omega=omega, delta=k / (2**m * omega))


@dataclass(frozen=True)
class QcsOutcome:
    """Result of one protocol run: distribution over j and the offset estimate."""

    distribution: dict[str, float]
    j_peak: int
    delta_estimate: float
    exact: bool

    def probability(self, j: int) -> float:
        m = len(next(iter(self.distribution)))
        return self.distribution[format(j, f"0{m}b")]


@dataclass(frozen=True)
class Gate:
    """One abstract gate of the phase-estimation network."""

    kind: str  # H | CNOT | TQH | CPHASE | SWAP | RZ
    targets: tuple[int, ...]
    angle: float | None = None
    layer: int | None = None


@dataclass(frozen=True)
class GateNetwork:
    """Ordered gate list over a fixed register size (first gate acts first)."""

    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for g in self.gates:
            if any(t < 1 or t > self.n for t in g.targets):
                raise ValueError(f"gate {g} targets outside register of size {self.n}")


def hadamard_all(m: int) -> np.ndarray:
    """H on each working qubit, identity on the ancilla, over m+1 qubits."""
    if m < 1:
        raise ValueError("need at least one working qubit")
    u = np.eye(2 ** (m + 1), dtype=complex)
    for q in range(1, m + 1):
        u = embed(HADAMARD, [q], m + 1) @ u
    return u


def tqh_phase(layer: int, params: ProtocolParams) -> np.ndarray:
    """Net two-qubit handshake unitary for one layer: diagonal phases
    exp(-i*theta) on |00> and exp(+i*theta) on |11>, theta = 2^layer * pi * wd.

    The CNOT sandwich around it then writes the relative phase
    exp(2*pi*i * 2^layer * wd) onto the layer qubit's |1> component, which is
    what the diagonal T operation requires.
    """
    if not 0 <= layer < params.m:
        raise ValueError(f"layer {layer} out of range for m={params.m}")
    theta = (2**layer) * np.pi * params.omega_delta
    return np.diag(
        [np.exp(-1j * theta), 1.0, 1.0, np.exp(1j * theta)]
    ).astype(complex)


def t_operation(params: ProtocolParams) -> np.ndarray:
    """The T operation built layer by layer as CNOT - handshake - CNOT."""
    m = params.m
    n = m + 1
    u = np.eye(2**n, dtype=complex)
    for layer in range(m):
        q = layer + 1
        cnot = embed(CNOT, [q, n], n)
        u = cnot @ embed(tqh_phase(layer, params), [q, n], n) @ cnot @ u
    return u


def t_operation_diagonal(params: ProtocolParams) -> np.ndarray:
    """Oracle form of T restricted to the ancilla-|0> block: the diagonal
    phase exp(2*pi*i*k*wd) on working basis state carrying index k."""
    m = params.m
    diag = np.empty(2**m, dtype=complex)
    for b in range(2**m):
        k = sum(((b >> (m - 1 - l)) & 1) << l for l in range(m))
        diag[b] = np.exp(2j * np.pi * k * params.omega_delta)
    return diag


def controlled_phase_gate() -> np.ndarray:
    """Two-qubit controlled -pi/2 phase: diag(1, 1, 1, -i)."""
    return np.diag([1.0, 1.0, 1.0, -1.0j]).astype(complex)


def controlled_phase(angle: float) -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * angle)]).astype(complex)


def inverse_qft_reduced_network(m: int) -> GateNetwork:
    """Gate network for the reduced (bit-reversal-absorbed) inverse QFT.

    Inverse of the standard no-swap forward QFT circuit: gates of the forward
    network reversed, with conjugated phase angles.
    """
    forward: list[Gate] = []
    for i in range(1, m + 1):
        forward.append(Gate("H", (i,)))
        for j in range(i + 1, m + 1):
            forward.append(Gate("CPHASE", (i, j), angle=np.pi / 2 ** (j - i)))
    inverse = tuple(
        Gate(g.kind, g.targets, angle=None if g.angle is None else -g.angle)
        for g in reversed(forward)
    )
    return GateNetwork(n=m, gates=inverse)


def gate_matrix(gate: Gate, n: int, params: ProtocolParams | None = None) -> np.ndarray:
    """Full-register unitary of one abstract gate."""
    if gate.kind == "H":
        return embed(HADAMARD, list(gate.targets), n)
    if gate.kind == "CNOT":
        return embed(CNOT, list(gate.targets), n)
    if gate.kind == "CPHASE":
        return embed(controlled_phase(gate.angle), list(gate.targets), n)
    if gate.kind == "SWAP":
        from .linalg import SWAP

        return embed(SWAP, list(gate.targets), n)
    if gate.kind == "RZ":
        rz = np.diag([np.exp(1j * gate.angle / 2), np.exp(-1j * gate.angle / 2)])
        return embed(rz.astype(complex), list(gate.targets), n)
    if gate.kind == "TQH":
        if params is None:
            raise ValueError("handshake gate needs protocol parameters")
        return embed(tqh_phase(gate.layer, params), list(gate.targets), n)
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def network_matrix(network: GateNetwork, params: ProtocolParams | None = None) -> np.ndarray:
    u = np.eye(2**network.n, dtype=complex)
    for gate in network.gates:
        u = gate_matrix(gate, network.n, params) @ u
    return u


def inverse_qft_reduced(m: int) -> np.ndarray:
    """Reduced inverse QFT matrix built from its gate network."""
    return network_matrix(inverse_qft_reduced_network(m))


def qcs_network(params: ProtocolParams) -> GateNetwork:
    """The full protocol network on m working qubits plus ancilla."""
    m = params.m
    n = m + 1
    gates: list[Gate] = [Gate("H", (q,)) for q in range(1, m + 1)]
    for layer in range(m):
        q = layer + 1
        gates.append(Gate("CNOT", (q, n)))
        gates.append(Gate("TQH", (q, n), layer=layer))
        gates.append(Gate("CNOT", (q, n)))
    for g in inverse_qft_reduced_network(m).gates:
        gates.append(g)
    return GateNetwork(n=n, gates=gates)


def qcs_unitary(params: ProtocolParams) -> np.ndarray:
    m = params.m
    u = t_operation(params) @ hadamard_all(m)
    return embed(inverse_qft_reduced(m), list(range(1, m + 1)), m + 1) @ u


def run_qcs(params: ProtocolParams, ancilla_atol: float = 1e-12) -> QcsOutcome:
    """Execute the protocol on |0...0> and read the working-qubit distribution."""
    m = params.m
    psi = qcs_unitary(params) @ basis_ket(0, m + 1)
    amps = psi.reshape(2**m, 2)
    leak = float(np.sum(np.abs(amps[:, 1]) ** 2))
    if leak > ancilla_atol:
        raise ValueError(f"ancilla left |0> with population {leak:.3e}")
    probs = np.abs(amps[:, 0]) ** 2
    probs = probs / probs.sum()
    distribution = {format(j, f"0{m}b"): float(p) for j, p in enumerate(probs)}
    j_peak = int(np.argmax(probs))  # argmax breaks ties toward smaller j
    scaled = 2**m * params.omega_delta
    return QcsOutcome(
        distribution=distribution,
        j_peak=j_peak,
        delta_estimate=estimate_delta(j_peak, params),
        exact=abs(scaled - round(scaled)) < 1e-9,
    )


def closed_form_distribution(params: ProtocolParams) -> dict[str, float]:
    """|c_j|^2 by direct summation of the output-amplitude formula."""
    m = params.m
    size = 2**m
    wd = params.omega_delta
    probs = {}
    for j in range(size):
        c = sum(np.exp(2j * np.pi * k * (wd - j / size)) for k in range(size)) / size
        probs[format(j, f"0{m}b")] = float(abs(c) ** 2)
    return probs


def estimate_delta(j: int, params: ProtocolParams) -> float:
    """Offset estimate for measured index j."""
    if not 0 <= j < 2**params.m:
        raise ValueError(f"index {j} out of range for m={params.m}")
    return j / (2**params.m * params.omega)
