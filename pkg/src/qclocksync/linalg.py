"""Dense complex linear algebra for small registers of spin-1/2 qubits.

Conventions used throughout the package:

* qubit 1 is the most significant bit of a basis label, so ``|010>`` means
  "qubit 2 set";
* ``|0>`` is the spin-up state with Iz eigenvalue +1/2;
* registers are capped at 8 qubits, everything is dense numpy.
"""

from __future__ import annotations

import numpy as np

MAX_QUBITS = 8

GATE_ATOL = 1e-12
EXPM_ATOL = 1e-10

I2 = np.eye(2, dtype=complex)

# spin-1/2 angular momentum components
IX = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
IY = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
IZ = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)

# control on the first listed qubit
CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def num_qubits(dim: int) -> int:
    """Number of qubits for a power-of-two dimension; raises otherwise."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise ValueError(f"register of {n} qubits exceeds the {MAX_QUBITS}-qubit cap")
    return n


def basis_ket(bits: str | int, n: int | None = None) -> np.ndarray:
    """Computational basis vector; ``bits`` is a bitstring or an index."""
    if isinstance(bits, str):
        n = len(bits)
        index = int(bits, 2)
    else:
        if n is None:
            raise ValueError("register size required for integer basis labels")
        index = int(bits)
    psi = np.zeros(2**n, dtype=complex)
    psi[index] = 1.0
    return psi


def projector(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def is_hermitian(a: np.ndarray, atol: float = GATE_ATOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= atol * max(1.0, np.max(np.abs(a))))


def is_unitary(u: np.ndarray, atol: float = GATE_ATOL) -> bool:
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= atol)


def qubit_permutation(order: list[int], n: int) -> np.ndarray:
    """Permutation matrix sending ``|b_1..b_n>`` to ``|b_order[0]..b_order[n-1]>``.

    Qubit labels are 1-based.
    """
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"{order} is not a permutation of qubits 1..{n}")
    dim = 2**n
    perm = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        row = 0
        for pos, q in enumerate(order):
            bit = (col >> (n - q)) & 1
            row |= bit << (n - 1 - pos)
        perm[row, col] = 1.0
    return perm


def embed(gate: np.ndarray, targets: list[int], n: int) -> np.ndarray:
    """Embed ``gate`` acting on the (1-based, ordered) target qubits of an
    n-qubit register, identity elsewhere."""
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target in {targets}")
    if any(t < 1 or t > n for t in targets):
        raise ValueError(f"target out of range in {targets} for n={n}")
    if gate.shape != (2**k, 2**k):
        raise ValueError(f"gate of shape {gate.shape} does not act on {k} qubits")
    rest = [q for q in range(1, n + 1) if q not in targets]
    perm = qubit_permutation(list(targets) + rest, n)
    full = np.kron(gate, np.eye(2 ** (n - k), dtype=complex))
    return perm.conj().T @ full @ perm


def apply_unitary(rho: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Conjugation ``U rho U^dagger`` with shape checking."""
    if rho.shape != u.shape:
        raise ValueError(f"state {rho.shape} and unitary {u.shape} dimensions differ")
    return u @ rho @ u.conj().T


def partial_trace(rho: np.ndarray, keep: list[int]) -> np.ndarray:
    """Trace out every qubit not listed in ``keep`` (1-based, ordered)."""
    n = num_qubits(rho.shape[0])
    if not keep:
        raise ValueError("must keep at least one qubit")
    if len(set(keep)) != len(keep) or any(q < 1 or q > n for q in keep):
        raise ValueError(f"invalid qubit list {keep} for n={n}")
    rest = [q for q in range(1, n + 1) if q not in keep]
    perm = qubit_permutation(list(keep) + rest, n)
    rho = perm @ rho @ perm.conj().T
    dk = 2 ** len(keep)
    dr = 2 ** len(rest)
    return np.trace(rho.reshape(dk, dr, dk, dr), axis1=1, axis2=3)


def measure_distribution(
    rho: np.ndarray, targets: list[int], trace_atol: float = 1e-12
) -> dict[str, float]:
    """Computational-basis marginal over ``targets`` normalized by the trace."""
    reduced = partial_trace(rho, targets)
    total = float(np.trace(reduced).real)
    if abs(total) <= trace_atol:
        raise ValueError("state trace vanished; nothing to measure")
    probs = np.diag(reduced).real / total
    k = len(targets)
    return {format(i, f"0{k}b"): float(p) for i, p in enumerate(probs)}


def matrix_exp(h: np.ndarray, t: float, atol: float = EXPM_ATOL) -> np.ndarray:
    """Propagator ``exp(-i H t)`` of a Hermitian generator, via eigendecomposition."""
    if not is_hermitian(h, atol=atol):
        raise ValueError("generator is not Hermitian")
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def phase_aligned(u: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Rescale ``u`` by a global phase so it best matches ``reference``.

    The phase is taken from the entry where ``reference`` is largest.
    """
    idx = np.unravel_index(np.argmax(np.abs(reference)), reference.shape)
    if abs(u[idx]) == 0:
        return u
    phase = reference[idx] / u[idx]
    return u * (phase / abs(phase))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2.0
