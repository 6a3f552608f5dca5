"""Gate-level statevector simulation of the three-qubit preparation circuits.

Rotation convention: R_axis(angle) = exp(-i * angle * sigma_axis / 2).
Controlled gates fire on the control qubit being |1>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .linalg import DIM, PAULIS, kron_all
from .states import PureState, standard_state

AXES = ("x", "y", "z")
GATE_KINDS = ("rotation", "hadamard", "cnot", "controlled_rotation")

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    axis: str | None = None
    angle: float | None = None
    control: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.target not in (1, 2, 3):
            raise ValueError(f"target must be in {{1, 2, 3}}, got {self.target}")
        needs_axis = self.kind in ("rotation", "controlled_rotation")
        if needs_axis:
            if self.axis not in AXES:
                raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError("rotation gates need a finite angle")
        needs_control = self.kind in ("cnot", "controlled_rotation")
        if needs_control:
            if self.control not in (1, 2, 3):
                raise ValueError(f"control must be in {{1, 2, 3}}, got {self.control}")
            if self.control == self.target:
                raise ValueError("control and target must differ")


def rotation(axis: str, angle: float, target: int) -> Gate:
    return Gate("rotation", target, axis=axis, angle=angle)


def hadamard(target: int) -> Gate:
    return Gate("hadamard", target)


def cnot(control: int, target: int) -> Gate:
    return Gate("cnot", target, control=control)


def controlled_rotation(axis: str, angle: float, control: int, target: int) -> Gate:
    return Gate("controlled_rotation", target, axis=axis, angle=angle, control=control)


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))


def _rotation_2x2(axis: str, angle: float) -> np.ndarray:
    sigma = PAULIS[axis.upper()]
    return math.cos(angle / 2) * np.eye(2) - 1j * math.sin(angle / 2) * sigma


def _embed_single(op: np.ndarray, target: int) -> np.ndarray:
    slots = [np.eye(2, dtype=complex)] * 3
    slots[target - 1] = op
    return kron_all(*slots)


def _embed_controlled(op: np.ndarray, control: int, target: int) -> np.ndarray:
    idle = [np.eye(2, dtype=complex)] * 3
    idle[control - 1] = _P0
    fire = [np.eye(2, dtype=complex)] * 3
    fire[control - 1] = _P1
    fire[target - 1] = op
    return kron_all(*idle) + kron_all(*fire)


def gate_matrix(gate: Gate) -> np.ndarray:
    """8x8 unitary embedding of a gate."""
    if gate.kind == "rotation":
        return _embed_single(_rotation_2x2(gate.axis, gate.angle), gate.target)
    if gate.kind == "hadamard":
        return _embed_single(_HADAMARD, gate.target)
    if gate.kind == "cnot":
        return _embed_controlled(PAULIS["X"], gate.control, gate.target)
    return _embed_controlled(_rotation_2x2(gate.axis, gate.angle), gate.control, gate.target)


def circuit_matrix(circuit: Circuit) -> np.ndarray:
    """Product of the gate embeddings in application order."""
    return reduce(lambda acc, g: gate_matrix(g) @ acc, circuit.gates, np.eye(DIM, dtype=complex))


def apply(circuit: Circuit, state: PureState) -> PureState:
    """Run the circuit on a state, multiplying gates in listed order."""
    vec = state.amplitudes
    for gate in circuit.gates:
        vec = gate_matrix(gate) @ vec
    return PureState(vec)


# Half-angles of the W preparation sequence; the controlled boxes apply
# rotations by twice these values.
W_ALPHA = math.pi / 3
W_BETA = math.asin(1 / math.sqrt(3))
W_GAMMA = math.pi / 4


def preparation_circuit(label: str) -> Circuit:
    """Gate sequence preparing a class representative from |000>.

    Each sequence reproduces ``standard_state(label)`` up to global phase.
    """
    table = {
        "GHZ": [hadamard(1), cnot(1, 2), cnot(1, 3)],
        "W": [
            rotation("y", 2 * W_ALPHA, 1),
            controlled_rotation("y", 2 * W_BETA, 1, 2),
            cnot(1, 2),
            controlled_rotation("y", 2 * W_GAMMA, 2, 3),
            cnot(3, 2),
        ],
        "BS-1": [rotation("y", math.pi / 2, 2), cnot(2, 3)],
        "BS-2": [hadamard(1), cnot(1, 3)],
        "BS-3": [hadamard(1), cnot(1, 2), rotation("x", math.pi, 1)],
        "SEP": [rotation("y", math.pi, q) for q in (1, 2, 3)],
    }
    if label not in table:
        raise ValueError(f"unknown class label {label!r}")
    return Circuit(tuple(table[label]))


def preparation_fidelity(label: str) -> float:
    """Trace-overlap fidelity between the circuit output and the target state."""
    from .states import fidelity

    out = apply(preparation_circuit(label), standard_state_reset())
    return fidelity(out.to_density_operator(), standard_state(label).to_density_operator())


def standard_state_reset() -> PureState:
    """The |000> register every preparation sequence starts from."""
    amps = np.zeros(DIM, dtype=complex)
    amps[0] = 1.0
    return PureState(amps)
