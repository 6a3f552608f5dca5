"""Dense complex linear algebra for small fixed dimensions (2, 4, 8).

Everything here is a pure function of its inputs.  Matrices are plain
``numpy.ndarray`` values; qubits are labelled 1..3 with qubit 1 the most
significant bit, so basis index = 4*q1 + 2*q2 + q3.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import ConvergenceError

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"I": PAULI_I, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

N_QUBITS = 3
DIM = 2**N_QUBITS


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be two-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product with validated operands."""
    return np.kron(as_complex_matrix(a, "a"), as_complex_matrix(b, "b"))


def kron_all(*mats) -> np.ndarray:
    """Left-associated Kronecker product of several matrices."""
    out = as_complex_matrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_complex_matrix(m))
    return out


def singular_values(m) -> np.ndarray:
    """Singular values of ``m`` in non-increasing order.

    Raises ConvergenceError if the decomposition fails rather than
    returning a partial result.
    """
    a = as_complex_matrix(m)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"singular value decomposition failed: {exc}") from exc


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix on the kept qubits of a three-qubit state.

    ``keep`` holds qubit labels from {1, 2, 3}; the kept subsystems stay
    in ascending label order.
    """
    a = as_complex_matrix(rho, "rho")
    if a.shape != (DIM, DIM):
        raise ValueError(f"rho must be {DIM}x{DIM}, got {a.shape}")
    kept = sorted(set(keep))
    if not kept:
        raise ValueError("keep set must be non-empty")
    if any(q not in (1, 2, 3) for q in kept):
        raise ValueError(f"qubit labels must be in {{1, 2, 3}}, got {kept}")
    traced = [q - 1 for q in (1, 2, 3) if q not in kept]
    t = a.reshape(2, 2, 2, 2, 2, 2)
    # Row axes 0..2, column axes 3..5; contract each traced qubit's pair.
    for n, ax in enumerate(traced):
        t = np.trace(t, axis1=ax - n, axis2=ax - n + 3 - n)
    d = 2 ** len(kept)
    return t.reshape(d, d)


def hermitian_eigensystem(m, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    Columns of the returned matrix are the eigenvectors; the input must
    be Hermitian within ``tol`` entrywise.
    """
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got {a.shape}")
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.conj().T).max() > tol * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals, vecs = np.linalg.eigh(a)
    return vals, vecs
