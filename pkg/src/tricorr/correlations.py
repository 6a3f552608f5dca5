"""Pauli expectation values, tensor completion, and matricization.

A three-qubit density operator is fixed by its 63 nontrivial Pauli
coefficients.  In the canonical (generalized Schmidt) basis, eight of the
27 three-body values vanish and six more follow from sign relations, so
13 measured words determine the whole 3x3x3 correlation tensor:

    zeros:      XXY XYX XYZ XZY YXX YXZ YYY YZX
    relations:  XYY = YXY = YYX = -XXX,  YYZ = -XXZ,
                YZY = -XZX,  ZYX = ZXY

Unfolding that tensor along each axis yields the three 3x9 correlation
matrices whose ranks drive the classification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import TricorrError
from .linalg import PAULIS, kron_all
from .states import DensityOperator

OBSERVABLE_WORDS = (
    "XXX", "XXZ", "XZX", "ZXY", "XZZ", "YZZ", "ZXX",
    "ZXZ", "ZYY", "ZYZ", "ZZX", "ZZY", "ZZZ",
)
ZERO_WORDS = ("XXY", "XYX", "XYZ", "XZY", "YXX", "YXZ", "YYY", "YZX")
DERIVED_WORDS = {
    "XYY": ("XXX", -1.0),
    "YXY": ("XXX", -1.0),
    "YYX": ("XXX", -1.0),
    "YYZ": ("XXZ", -1.0),
    "YZY": ("XZX", -1.0),
    "ZYX": ("ZXY", 1.0),
}

_LETTER_INDEX = {"X": 0, "Y": 1, "Z": 2}
_VALUE_SLACK = 1e-9
_FILE_VALUE_LIMIT = 1.05


@dataclass(frozen=True)
class ObservableSet13:
    """Real expectation values of the 13 tensor-determining Pauli words."""

    values: Mapping[str, float]

    def __post_init__(self):
        vals = dict(self.values)
        missing = [w for w in OBSERVABLE_WORDS if w not in vals]
        if missing:
            raise ValueError(f"missing observable {missing[0]!r}")
        extra = [w for w in vals if w not in OBSERVABLE_WORDS]
        if extra:
            raise ValueError(f"unexpected observable {extra[0]!r}")
        for word, v in vals.items():
            if not np.isfinite(v):
                raise ValueError(f"observable {word!r} is not finite")
            if abs(v) > _FILE_VALUE_LIMIT:
                raise ValueError(f"observable {word!r} value {v!r} outside [-1.05, 1.05]")
        object.__setattr__(self, "values", MappingProxyType({w: float(vals[w]) for w in OBSERVABLE_WORDS}))

    def __getitem__(self, word: str) -> float:
        return self.values[word]

    def items(self):
        return self.values.items()


@dataclass(frozen=True)
class PauliDecomposition:
    """All 63 nontrivial Pauli coefficients of a state."""

    one_body: tuple[np.ndarray, np.ndarray, np.ndarray]
    two_body: Mapping[tuple[int, int], np.ndarray]
    three_body: np.ndarray


@dataclass(frozen=True)
class CorrelationMatrices:
    """The three 3x9 unfoldings of the three-body correlation tensor."""

    m1: np.ndarray
    m2: np.ndarray
    m3: np.ndarray

    def as_tuple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.m1, self.m2, self.m3)


@dataclass(frozen=True)
class CanonicalBasisReport:
    """Largest violation of the canonical-basis zero and sign conditions."""

    max_violation: float
    passed: bool
    violations: Mapping[str, float]


@lru_cache(maxsize=None)
def pauli_matrix(word: str) -> np.ndarray:
    """8x8 matrix of a three-letter Pauli word such as 'XIZ'."""
    if len(word) != 3 or any(c not in PAULIS for c in word):
        raise ValueError(f"invalid Pauli word {word!r}")
    m = kron_all(*(PAULIS[c] for c in word))
    m.setflags(write=False)
    return m


def _matrix_of(state) -> np.ndarray:
    if isinstance(state, DensityOperator):
        return state.matrix
    return np.asarray(state, dtype=complex)


def expectation(state, word: str) -> float:
    """tr(rho P1 (x) P2 (x) P3) for a three-letter Pauli word."""
    rho = _matrix_of(state)
    val = complex(np.einsum("ij,ji->", rho, pauli_matrix(word)))
    if abs(val.imag) > 1e-8:
        raise TricorrError(
            f"expectation of {word} has imaginary residue {val.imag:.3e}; input is not Hermitian"
        )
    return float(val.real)


def three_body_tensor(state) -> np.ndarray:
    """3x3x3 tensor of all three-body Pauli expectation values."""
    t = np.empty((3, 3, 3))
    for (i, a), (j, b), (k, c) in itertools.product(enumerate("XYZ"), repeat=3):
        t[i, j, k] = expectation(state, a + b + c)
    return t


def full_decomposition(state) -> PauliDecomposition:
    """Every nontrivial Pauli coefficient of a density operator."""
    one = []
    for n in range(3):
        vec = np.empty(3)
        for i, a in enumerate("XYZ"):
            word = ["I", "I", "I"]
            word[n] = a
            vec[i] = expectation(state, "".join(word))
        one.append(vec)
    two = {}
    for n, m in ((0, 1), (0, 2), (1, 2)):
        mat = np.empty((3, 3))
        for (i, a), (j, b) in itertools.product(enumerate("XYZ"), repeat=2):
            word = ["I", "I", "I"]
            word[n], word[m] = a, b
            mat[i, j] = expectation(state, "".join(word))
        two[(n + 1, m + 1)] = mat
    return PauliDecomposition(tuple(one), MappingProxyType(two), three_body_tensor(state))


def reconstruct_density(decomp: PauliDecomposition) -> np.ndarray:
    """Rebuild the density matrix from its Pauli coefficients."""
    rho = np.eye(8, dtype=complex)
    for n in range(3):
        for i, a in enumerate("XYZ"):
            word = ["I", "I", "I"]
            word[n] = a
            rho = rho + decomp.one_body[n][i] * pauli_matrix("".join(word))
    for (p, q), mat in decomp.two_body.items():
        for (i, a), (j, b) in itertools.product(enumerate("XYZ"), repeat=2):
            word = ["I", "I", "I"]
            word[p - 1], word[q - 1] = a, b
            rho = rho + mat[i, j] * pauli_matrix("".join(word))
    for (i, a), (j, b), (k, c) in itertools.product(enumerate("XYZ"), repeat=3):
        rho = rho + decomp.three_body[i, j, k] * pauli_matrix(a + b + c)
    return rho / 8.0


def measure13(state) -> ObservableSet13:
    """The 13 three-body expectation values that determine the tensor."""
    return ObservableSet13({w: expectation(state, w) for w in OBSERVABLE_WORDS})


def complete_tensor(obs: ObservableSet13) -> np.ndarray:
    """Fill the full 3x3x3 tensor from the 13 measured words.

    The eight structurally-zero slots stay exactly zero and the six derived
    slots mirror their measured partners, so every cell of the resulting
    unfoldings is numerically consistent by construction.
    """
    t = np.zeros((3, 3, 3))
    for word, value in obs.items():
        t[tuple(_LETTER_INDEX[c] for c in word)] = value
    for word, (source, sign) in DERIVED_WORDS.items():
        t[tuple(_LETTER_INDEX[c] for c in word)] = sign * obs[source]
    return t


def canonical_basis_check(state, tol: float) -> CanonicalBasisReport:
    """Measure how far a state is from satisfying the canonical-basis pattern."""
    t = three_body_tensor(state)

    def at(word):
        return t[tuple(_LETTER_INDEX[c] for c in word)]

    violations: dict[str, float] = {}
    for word in ZERO_WORDS:
        violations[word] = abs(at(word))
    for word, (source, sign) in DERIVED_WORDS.items():
        violations[f"{word}-({sign:+.0f}){source}"] = abs(at(word) - sign * at(source))
    worst = max(violations.values())
    return CanonicalBasisReport(worst, worst < tol, MappingProxyType(violations))


def matricize(tensor) -> CorrelationMatrices:
    """Unfold a 3x3x3 tensor into its three 3x9 correlation matrices.

    The singled-out index becomes the row index: m1[i, 3j+k] = t[i, j, k],
    m2[j, 3i+k] = t[i, j, k], m3[k, 3i+j] = t[i, j, k].
    """
    t = np.asarray(tensor, dtype=float)
    if t.shape != (3, 3, 3):
        raise ValueError(f"expected a 3x3x3 tensor, got {t.shape}")
    if np.abs(t).max() > 1.0 + _VALUE_SLACK + 0.05:
        raise ValueError("tensor entries outside the physical range")
    m1 = t.reshape(3, 9).copy()
    m2 = np.transpose(t, (1, 0, 2)).reshape(3, 9).copy()
    m3 = np.transpose(t, (2, 0, 1)).reshape(3, 9).copy()
    return CorrelationMatrices(m1, m2, m3)
