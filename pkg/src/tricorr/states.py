"""Three-qubit pure states: construction, canonical form, sampling, fidelity.

Amplitudes are ordered |000>, |001>, ..., |111> with qubit 1 as the most
significant bit.  The canonical (generalized Schmidt) form keeps five
amplitudes

    a0|000> + a1 e^{i theta}|100> + a2|101> + a3|110> + a4|111>

with a_i >= 0, sum a_i^2 = 1 and theta in [0, pi].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CanonicalizationError, TricorrError
from .linalg import DIM, kron_all, partial_trace

STANDARD_CLASSES = ("GHZ", "W", "BS-1", "BS-2", "BS-3", "SEP")
RANDOM_CLASSES = STANDARD_CLASSES + ("HAAR",)

_NORM_TOL = 1e-10
_REJECTION_BUDGET = 1000


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized three-qubit state vector (8 complex amplitudes)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if a.shape != (DIM,):
            raise ValueError(f"expected {DIM} amplitudes, got {a.shape}")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise ValueError("amplitudes contain non-finite values")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {_NORM_TOL}")
        object.__setattr__(self, "amplitudes", a)

    def density(self) -> np.ndarray:
        """Projector |psi><psi| as an 8x8 array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density_operator(self) -> "DensityOperator":
        return DensityOperator(self.density())


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """8x8 Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (DIM, DIM):
            raise ValueError(f"expected an {DIM}x{DIM} matrix, got {m.shape}")
        if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
            raise ValueError("matrix contains non-finite values")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise ValueError("matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond 1e-10")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", m)

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def principal_eigenvector(self) -> tuple[float, np.ndarray]:
        """Largest eigenvalue and its (unit) eigenvector."""
        vals, vecs = np.linalg.eigh(self.matrix)
        return float(vals[-1]), vecs[:, -1]


@dataclass(frozen=True)
class CanonicalForm:
    """Five non-negative amplitudes plus one phase of the Schmidt normal form."""

    a0: float
    a1: float
    a2: float
    a3: float
    a4: float
    theta: float = 0.0

    def __post_init__(self):
        coeffs = self.coefficients()
        if any(c < 0 for c in coeffs):
            raise ValueError("canonical amplitudes must be non-negative")
        total = sum(c * c for c in coeffs)
        if abs(total - 1.0) > _NORM_TOL:
            raise ValueError(f"canonical amplitudes have squared sum {total!r}, not 1")
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta {self.theta!r} outside [0, pi]")

    def coefficients(self) -> tuple[float, float, float, float, float]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4)


def standard_state(label: str) -> PureState:
    """One representative state per entanglement class.

    GHZ = (|000>+|111>)/sqrt(2); W = (|000>+|100>+|101>+|110>)/2;
    BS-1 = (|000>+|011>)/sqrt(2); BS-2 = (|000>+|101>)/sqrt(2);
    BS-3 = (|010>+|100>)/sqrt(2); SEP = |111>.
    """
    s = 1 / math.sqrt(2)
    table = {
        "GHZ": {0: s, 7: s},
        "W": {0: 0.5, 4: 0.5, 5: 0.5, 6: 0.5},
        "BS-1": {0: s, 3: s},
        "BS-2": {0: s, 5: s},
        "BS-3": {2: s, 4: s},
        "SEP": {7: 1.0},
    }
    if label not in table:
        raise ValueError(f"unknown class label {label!r}; expected one of {STANDARD_CLASSES}")
    amps = np.zeros(DIM, dtype=complex)
    for idx, val in table[label].items():
        amps[idx] = val
    return PureState(amps)


def from_canonical(form: CanonicalForm) -> PureState:
    """State vector of a canonical form: amplitudes at indices 0, 4, 5, 6, 7."""
    amps = np.zeros(DIM, dtype=complex)
    amps[0] = form.a0
    amps[4] = form.a1 * cmath.exp(1j * form.theta)
    amps[5] = form.a2
    amps[6] = form.a3
    amps[7] = form.a4
    return PureState(amps)


def _det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _wrap_phase(phi: float) -> float:
    """Map an angle to (-pi, pi]."""
    out = math.fmod(phi, 2 * math.pi)
    if out <= -math.pi:
        out += 2 * math.pi
    elif out > math.pi:
        out -= 2 * math.pi
    return out


def _root_directions(t0: np.ndarray, t1: np.ndarray) -> list[tuple[complex, complex]]:
    """Directions (alpha, beta) with det(alpha*t0 + beta*t1) = 0.

    det is quadratic along the pencil, so there are at most two roots.  When
    the leading coefficient vanishes the identity direction (1, 0) is itself
    a root and is listed first.
    """
    qa = _det2(t0)
    qc = _det2(t1)
    qb = _det2(t0 + t1) - qa - qc
    scale = max(abs(qa), abs(qb), abs(qc))
    if scale < 1e-14:
        return [(1.0 + 0j, 0.0 + 0j)]
    roots: list[tuple[complex, complex]] = []
    if abs(qa) <= 1e-14 * scale:
        roots.append((1.0 + 0j, 0.0 + 0j))
        if abs(qb) > 1e-14 * scale:
            roots.append((-qc / qb, 1.0 + 0j))
    else:
        disc = cmath.sqrt(qb * qb - 4.0 * qa * qc)
        if abs(qb + disc) < abs(qb - disc):
            disc = -disc
        q = -(qb + disc) / 2.0
        roots.append((q / qa, 1.0 + 0j))
        if abs(q) > 1e-14 * scale:
            roots.append((qc / q, 1.0 + 0j))
        else:
            roots.append((0.0 + 0j, 1.0 + 0j))
        # Near a double root the formula is only sqrt(eps) accurate; the
        # vertex -qb/(2qa) locates it to full precision instead.
        if abs(disc) <= 1e-6 * math.sqrt(max(abs(qb) ** 2, 4.0 * abs(qa) * abs(qc))):
            roots.append((-qb / (2.0 * qa), 1.0 + 0j))
    return roots


def _absorb_phases(a0: float, bottom: np.ndarray) -> tuple[CanonicalForm, tuple[float, float, float]] | None:
    """Choose per-qubit phases making all retained amplitudes real non-negative.

    The |100> slot keeps the one irreducible phase theta.  Returns None when
    theta is pinned outside [0, pi] (the other det root must be used then).
    """
    t00, t01 = bottom[0, 0], bottom[0, 1]
    t10, t11 = bottom[1, 0], bottom[1, 1]
    # amplitudes this small are dropped rather than allowed to pin a phase;
    # they cost at most zero_tol in the final residual
    zero_tol = 1e-10
    d00, d01 = cmath.phase(t00), cmath.phase(t01)
    d10, d11 = cmath.phase(t10), cmath.phase(t11)
    has00, has01 = abs(t00) > zero_tol, abs(t01) > zero_tol
    has10, has11 = abs(t10) > zero_tol, abs(t11) > zero_tol

    if has01 and has10 and has11:
        # All three phase constraints active: phi1 is pinned, theta rigid.
        phi3 = d10 - d11
        phi2 = d01 - d11
        phi1 = -d01 - phi3
    else:
        # At least one slack constraint: spend phi1 on making theta zero.
        phi1 = -d00 if has00 else 0.0
        if has01 and has10:
            phi3 = -d01 - phi1
            phi2 = -d10 - phi1
        elif has01 and has11:
            phi2 = d01 - d11
            phi3 = -d01 - phi1
        elif has10 and has11:
            phi2 = -d10 - phi1
            phi3 = -d11 - phi1 - phi2
        elif has01:
            phi2, phi3 = 0.0, -d01 - phi1
        elif has10:
            phi2, phi3 = -d10 - phi1, 0.0
        elif has11:
            phi2, phi3 = 0.0, -d11 - phi1
        else:
            phi2, phi3 = 0.0, 0.0

    theta = _wrap_phase(d00 + phi1) if has00 else 0.0
    theta_tol = 1e-9
    if theta < -theta_tol or theta > math.pi + theta_tol:
        return None
    theta = min(max(theta, 0.0), math.pi)
    form = CanonicalForm(a0, abs(t00), abs(t01), abs(t10), abs(t11), theta)
    return form, (phi1, phi2, phi3)


def canonicalize(
    psi: PureState, tol: float = 1e-9
) -> tuple[CanonicalForm, tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Local unitaries bringing a state to the generalized Schmidt form.

    Returns ``(form, (U1, U2, U3))`` with ``(U1 (x) U2 (x) U3)|psi>`` equal to
    ``from_canonical(form)`` within ``tol`` per amplitude.

    The qubit-1 rotation is found by annihilating the determinant of the
    top coefficient slice (a quadratic pencil with at most two roots); the
    SVD of the resulting rank-one slice fixes the other two rotations, and
    residual per-qubit phases are absorbed afterwards.  When both roots
    give an admissible phase, the one with larger a0 wins; ties within
    1e-12 go to the smaller theta.
    """
    amps = psi.amplitudes
    t0 = amps[:4].reshape(2, 2)
    t1 = amps[4:].reshape(2, 2)

    candidates = []
    best_residual = math.inf
    for alpha, beta in _root_directions(t0, t1):
        nrm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        a, b = alpha / nrm, beta / nrm
        u1 = np.array([[a, b], [-b.conjugate(), a.conjugate()]])
        top = a * t0 + b * t1
        bottom = -b.conjugate() * t0 + a.conjugate() * t1
        w, s, vh = np.linalg.svd(top)
        u2 = w.conj().T
        u3 = vh.conj()
        bottom = u2 @ bottom @ vh.conj().T
        absorbed = _absorb_phases(float(s[0]), bottom)
        if absorbed is None:
            continue
        form, (phi1, phi2, phi3) = absorbed
        u1 = np.diag([1.0, cmath.exp(1j * phi1)]) @ u1
        u2 = np.diag([1.0, cmath.exp(1j * phi2)]) @ u2
        u3 = np.diag([1.0, cmath.exp(1j * phi3)]) @ u3
        rotated = kron_all(u1, u2, u3) @ amps
        residual = float(np.abs(rotated - from_canonical(form).amplitudes).max())
        best_residual = min(best_residual, residual)
        if residual <= tol:
            candidates.append((form, (u1, u2, u3), residual))

    if not candidates:
        raise CanonicalizationError("no rotation reached the canonical pattern", best_residual)

    candidates.sort(key=lambda entry: (-entry[0].a0, entry[0].theta))
    best = candidates[0]
    for other in candidates[1:]:
        # ties in a0 narrower than 1e-12 go to the smaller theta
        if abs(other[0].a0 - best[0].a0) <= 1e-12 and other[0].theta < best[0].theta:
            best = other
    form, unitaries, _ = best
    return form, unitaries


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _haar_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _pair_concurrence(phi: np.ndarray) -> float:
    """Concurrence 2|ad - bc| of a two-qubit pure state (a, b, c, d)."""
    return 2.0 * abs(phi[0] * phi[3] - phi[1] * phi[2])


def _place_pair(spectator: int, single: np.ndarray, pair: np.ndarray) -> np.ndarray:
    """Assemble a 3-qubit vector from qubit ``spectator`` and a pair state.

    The pair amplitudes are indexed with the lower-labelled qubit of the
    pair as the more significant bit.
    """
    pair2 = pair.reshape(2, 2)
    if spectator == 1:
        t = np.einsum("a,bc->abc", single, pair2)
    elif spectator == 2:
        t = np.einsum("b,ac->abc", single, pair2)
    else:
        t = np.einsum("c,ab->abc", single, pair2)
    return t.reshape(-1)


def random_state(label: str, seed: int) -> PureState:
    """Seeded random state constrained to an entanglement class.

    HAAR draws a normalized vector of 8 complex Gaussians.  SEP is a product
    of three Haar single-qubit states.  BS-k tensors a Haar-random entangled
    pair (pair concurrence > 0.1 by rejection) with a random state on qubit k.
    GHZ and W apply random invertible local operators (complex Gaussian
    entries, condition number <= 100 by rejection) to the standard state.
    """
    if label not in RANDOM_CLASSES:
        raise ValueError(f"unknown class label {label!r}; expected one of {RANDOM_CLASSES}")
    rng = np.random.default_rng(seed)
    if label == "HAAR":
        return PureState(_haar_vector(DIM, rng))
    if label == "SEP":
        return PureState(kron_all(*(_haar_vector(2, rng).reshape(2, 1) for _ in range(3))).reshape(-1))
    if label.startswith("BS-"):
        spectator = int(label[-1])
        single = _haar_vector(2, rng)
        for _ in range(_REJECTION_BUDGET):
            pair = _haar_vector(4, rng)
            if _pair_concurrence(pair) > 0.1:
                return PureState(_place_pair(spectator, single, pair))
        raise TricorrError(f"rejection budget exhausted after {_REJECTION_BUDGET} attempts")
    base = standard_state(label).amplitudes
    ops = []
    for _ in range(3):
        for _ in range(_REJECTION_BUDGET):
            op = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            if np.linalg.cond(op) <= 100.0:
                ops.append(op)
                break
        else:
            raise TricorrError(f"rejection budget exhausted after {_REJECTION_BUDGET} attempts")
    vec = kron_all(*ops) @ base
    return PureState(vec / np.linalg.norm(vec))


def random_canonical_form(seed: int) -> CanonicalForm:
    """Seeded random point of the canonical-form parameter space."""
    rng = np.random.default_rng(seed)
    a = np.abs(rng.standard_normal(5))
    a /= np.linalg.norm(a)
    return CanonicalForm(*a.tolist(), theta=float(rng.uniform(0.0, math.pi)))


def fidelity(a: DensityOperator, b: DensityOperator) -> float:
    """Normalized trace overlap |tr(a b+)| / sqrt(tr(a a+) tr(b b+))."""
    ma, mb = a.matrix, b.matrix
    overlap = abs(complex(np.trace(ma @ mb.conj().T)))
    na = float(np.real(np.trace(ma @ ma.conj().T)))
    nb = float(np.real(np.trace(mb @ mb.conj().T)))
    if na <= 0.0 or nb <= 0.0:
        raise TricorrError("fidelity is undefined for a zero-norm operand")
    return overlap / math.sqrt(na * nb)


def marginal_purities(psi: PureState) -> tuple[float, float, float]:
    """tr(rho_k^2) of the single-qubit marginals, k = 1, 2, 3."""
    rho = psi.density()
    out = []
    for k in (1, 2, 3):
        red = partial_trace(rho, {k})
        out.append(float(np.real(np.trace(red @ red))))
    return tuple(out)
