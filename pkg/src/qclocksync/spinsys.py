"""Three-spin NMR system: frequencies, J couplings, gyromagnetic ratios."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import IZ, embed, matrix_exp

#: gamma(1H) / gamma(13C), physical value for the proton/carbon pair
GAMMA_H_OVER_C = 3.9777

#: measured couplings of the trichloroethylene sample, Hz
J12_HZ = 103.1
J23_HZ = 203.8
J13_HZ = 9.16

#: carbon chemical-shift difference, Hz (C transmitter sits on C2)
NU1_MINUS_NU2_HZ = 904.4


@dataclass(frozen=True)
class SpinSystem:
    """Spin register parameters.  Frequencies are rotating-frame offsets in Hz;
    gammas are gyromagnetic ratios relative to 13C."""

    nu: tuple[float, ...] = (NU1_MINUS_NU2_HZ, 0.0, 0.0)
    j: tuple[tuple[float, ...], ...] = (
        (0.0, J12_HZ, J13_HZ),
        (J12_HZ, 0.0, J23_HZ),
        (J13_HZ, J23_HZ, 0.0),
    )
    gamma: tuple[float, ...] = (1.0, 1.0, GAMMA_H_OVER_C)

    def __post_init__(self):
        n = self.n
        if len(self.gamma) != n or len(self.j) != n:
            raise ValueError("frequency, coupling, and gamma sizes disagree")
        jm = np.asarray(self.j, dtype=float)
        if jm.shape != (n, n) or np.max(np.abs(jm - jm.T)) > 0:
            raise ValueError("coupling matrix must be symmetric")
        if np.max(np.abs(np.diag(jm))) > 0:
            raise ValueError("coupling matrix must have zero diagonal")

    @property
    def n(self) -> int:
        return len(self.nu)

    @property
    def dim(self) -> int:
        return 2**self.n

    def coupling(self, a: int, b: int) -> float:
        """J between spins ``a`` and ``b`` (1-based)."""
        return self.j[a - 1][b - 1]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(1, self.n + 1) for b in range(a + 1, self.n + 1)]


def hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Weak-coupling spin Hamiltonian: negative chemical-shift terms plus
    positive Iz-Iz coupling terms, hbar = 1 (angular frequency units)."""
    n = sys.n
    h = np.zeros((sys.dim, sys.dim), dtype=complex)
    for q in range(1, n + 1):
        h -= 2 * np.pi * sys.nu[q - 1] * embed(IZ, [q], n)
    for a, b in sys.pairs():
        jab = sys.coupling(a, b)
        if jab:
            h += 2 * np.pi * jab * embed(IZ, [a], n) @ embed(IZ, [b], n)
    return h


def coupling_hamiltonian(sys: SpinSystem, pairs: list[tuple[int, int]]) -> np.ndarray:
    """Only the listed Iz-Iz coupling terms (the refocused-delay effective
    Hamiltonian: chemical shifts and other couplings averaged away)."""
    n = sys.n
    h = np.zeros((sys.dim, sys.dim), dtype=complex)
    for a, b in pairs:
        if a == b:
            raise ValueError("coupling pair must name two distinct spins")
        jab = sys.coupling(a, b)
        h += 2 * np.pi * jab * embed(IZ, [a], n) @ embed(IZ, [b], n)
    return h


def coupled_evolution(a: int, b: int, tau: float, sys: SpinSystem) -> np.ndarray:
    """Ideal selective two-spin coupling propagator
    ``exp(-i 2 pi J_ab tau Iz_a Iz_b)``, identity on the other spins."""
    if a == b:
        raise ValueError("coupled evolution needs two distinct spins")
    return matrix_exp(coupling_hamiltonian(sys, [(a, b)]), tau)


CONFIG_KEYS = (
    "nu1_minus_nu2_hz",
    "J12_hz",
    "J23_hz",
    "J13_hz",
    "gamma_ratio_H_over_C",
)


def to_config(sys: SpinSystem) -> str:
    if sys.n != 3:
        raise ValueError("config format covers the three-spin system only")
    values = {
        "nu1_minus_nu2_hz": sys.nu[0] - sys.nu[1],
        "J12_hz": sys.coupling(1, 2),
        "J23_hz": sys.coupling(2, 3),
        "J13_hz": sys.coupling(1, 3),
        "gamma_ratio_H_over_C": sys.gamma[2] / sys.gamma[0],
    }
    return "".join(f"{k}={values[k]:.17g}\n" for k in CONFIG_KEYS)


def from_config(text: str) -> SpinSystem:
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        values[key] = float(val)
    missing = [k for k in CONFIG_KEYS if k not in values]
    if missing:
        raise ValueError(f"missing keys: {', '.join(missing)}")
    j12, j23, j13 = values["J12_hz"], values["J23_hz"], values["J13_hz"]
    return SpinSystem(
        nu=(values["nu1_minus_nu2_hz"], 0.0, 0.0),
        j=((0.0, j12, j13), (j12, 0.0, j23), (j13, j23, 0.0)),
        gamma=(1.0, 1.0, values["gamma_ratio_H_over_C"]),
    )


def load_config(path: str | Path) -> SpinSystem:
    return from_config(Path(path).read_text())


def save_config(sys: SpinSystem, path: str | Path) -> None:
    Path(path).write_text(to_config(sys))
