"""State tomography and the overlap-times-purity fidelity score.

Readout model: before sampling diagonal populations, each spin optionally
receives a pi/2 pulse about x or y.  The 27 settings {none, x, y}^3 expose
every product-operator component of a three-spin deviation matrix, and the
(overdetermined) linear system is inverted by least squares.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import I2, PAULI_X, PAULI_Y, PAULI_Z, IX, IY, embed, matrix_exp

READOUT_PULSES = ("n", "x", "y")

Setting = tuple[str, ...]
ReadoutOracle = Callable[[Setting], np.ndarray]


@dataclass(frozen=True)
class TomographyPlan:
    """Which per-spin readout pulses to run; default is the full 27-setting
    (overcomplete) product set for three spins."""

    n: int = 3
    settings: tuple[Setting, ...] = ()

    def __post_init__(self):
        if not self.settings:
            object.__setattr__(
                self,
                "settings",
                tuple(itertools.product(READOUT_PULSES, repeat=self.n)),
            )
        for s in self.settings:
            if len(s) != self.n or any(p not in READOUT_PULSES for p in s):
                raise ValueError(f"bad readout setting {s!r}")


def readout_unitary(setting: Setting) -> np.ndarray:
    """Net unitary of one readout setting's pulses (ideal pi/2 rotations)."""
    n = len(setting)
    u = np.eye(2**n, dtype=complex)
    for q, pulse in enumerate(setting, start=1):
        if pulse == "n":
            continue
        op = IX if pulse == "x" else IY
        u = matrix_exp(embed(op, [q], n), -np.pi / 2) @ u  # exp(+i pi/2 I_axis)
    return u


def readout_oracle(rho: np.ndarray) -> ReadoutOracle:
    """Exact readout evaluator for a known state: populations after the
    setting's pulses."""

    def evaluate(setting: Setting) -> np.ndarray:
        u = readout_unitary(setting)
        return np.real(np.diag(u @ rho @ u.conj().T)).copy()

    return evaluate


def _pauli_basis(n: int) -> list[np.ndarray]:
    singles = (I2, PAULI_X, PAULI_Y, PAULI_Z)
    basis = []
    for combo in itertools.product(singles, repeat=n):
        m = np.array([[1.0 + 0j]])
        for op in combo:
            m = np.kron(m, op)
        basis.append(m)
    return basis


def _design_matrix(plan: TomographyPlan) -> tuple[np.ndarray, list[np.ndarray]]:
    """Real linear map from Pauli coefficients to stacked population vectors."""
    n = plan.n
    dim = 2**n
    basis = _pauli_basis(n)
    rows = []
    for setting in plan.settings:
        u = readout_unitary(setting)
        for k in range(dim):
            proj = np.outer(u[k].conj(), u[k])  # U^dag |k><k| U
            rows.append([np.trace(proj @ b).real for b in basis])
    return np.asarray(rows), basis


def reconstruct(oracle: ReadoutOracle, plan: TomographyPlan | None = None) -> np.ndarray:
    """Least-squares deviation-matrix estimate from readout populations.

    No positivity projection: deviation matrices are indefinite by nature.
    """
    plan = plan or TomographyPlan()
    design, basis = _design_matrix(plan)
    if np.linalg.matrix_rank(design) < len(basis):
        raise ValueError("readout plan is not informationally complete")
    data = np.concatenate([np.asarray(oracle(s), dtype=float) for s in plan.settings])
    coeffs, *_ = np.linalg.lstsq(design, data, rcond=None)
    rho = sum(c * b for c, b in zip(coeffs, basis))
    return (rho + rho.conj().T) / 2.0


@dataclass(frozen=True)
class FidelityReport:
    """The transformation-fidelity scalar and its two factors."""

    c: float
    overlap: float  # normalized Tr(rho_theory rho_exp)
    purity_ratio: float  # sqrt(Tr rho_exp^2 / Tr rho_initial^2)


def fidelity(
    rho_theory: np.ndarray,
    rho_exp: np.ndarray,
    rho_initial: np.ndarray,
    purity_atol: float = 1e-300,
) -> FidelityReport:
    """Normalized overlap of theory and experiment, times the purity kept
    relative to the initial state:

        C = Tr(rho_t rho_e) / (sqrt(Tr rho_t^2) sqrt(Tr rho_e^2))
            * sqrt(Tr rho_e^2 / Tr rho_i^2)
    """
    pt = float(np.trace(rho_theory @ rho_theory).real)
    pe = float(np.trace(rho_exp @ rho_exp).real)
    pi_ = float(np.trace(rho_initial @ rho_initial).real)
    if min(pt, pe, pi_) <= purity_atol:
        raise ValueError("zero-purity input; fidelity undefined")
    overlap = float(np.trace(rho_theory @ rho_exp).real) / np.sqrt(pt * pe)
    purity_ratio = float(np.sqrt(pe / pi_))
    return FidelityReport(c=overlap * purity_ratio, overlap=overlap, purity_ratio=purity_ratio)
