"""JSON wire format for complex matrices.

Schema: ``{"dim": n, "re": [[...]], "im": [[...]]}`` with ``re``/``im`` the
row-major real and imaginary parts of an n-by-n matrix.
"""

from __future__ import annotations

import json

import numpy as np


def matrix_to_json(matrix: np.ndarray) -> dict:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(payload: dict) -> np.ndarray:
    dim = int(payload["dim"])
    re = np.asarray(payload["re"], dtype=float)
    im = np.asarray(payload["im"], dtype=float)
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError("re/im shapes do not match the declared dimension")
    return re + 1j * im


def dump_matrix(matrix: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(matrix), fh)


def load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
