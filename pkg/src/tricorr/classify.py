"""Rank-based entanglement classification with a purity-based oracle.

The rank triple of the three correlation-matrix unfoldings maps to one of
five classes:

    (2,2,2) or (3,3,3) -> GE        (1,3,3) -> BS-1
    (3,1,3) -> BS-2                 (3,3,1) -> BS-3
    (1,1,1) -> SEP                  anything else -> UNCLASSIFIED

Exact data is ranked by counting singular values above a tiny threshold.
Noisy data is first cleaned entrywise: matrix entries inside the error bar
around zero are set to zero before ranking, which is how experimental
correlation matrices tolerate calibration noise without rank inflation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .correlations import (
    CorrelationMatrices,
    ObservableSet13,
    canonical_basis_check,
    complete_tensor,
    matricize,
    measure13,
)
from .entanglement import concurrence_sq_from_observables
from .errors import TricorrError
from .linalg import singular_values
from .states import DensityOperator, PureState, canonicalize, from_canonical, marginal_purities

CLASS_LABELS = ("GE", "BS-1", "BS-2", "BS-3", "SEP", "UNCLASSIFIED")

_RANK_TO_CLASS = {
    (2, 2, 2): "GE",
    (3, 3, 3): "GE",
    (1, 3, 3): "BS-1",
    (3, 1, 3): "BS-2",
    (3, 3, 1): "BS-3",
    (1, 1, 1): "SEP",
}


class RankTriple(NamedTuple):
    r1: int
    r2: int
    r3: int


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds for rank decisions and the purity gate.

    ``mode`` is "exact" for ideal data (ranks from raw singular values at
    ``exact_threshold``) or "noisy" for experimental-regime data (entries
    within ``rank_threshold`` of zero are cleaned first).
    """

    mode: str = "exact"
    rank_threshold: float = 0.09
    exact_threshold: float = 1e-10
    purity_epsilon: float | None = None

    def __post_init__(self):
        if self.mode not in ("exact", "noisy"):
            raise ValueError(f"mode must be 'exact' or 'noisy', got {self.mode!r}")
        if self.rank_threshold <= 0 or self.exact_threshold <= 0:
            raise ValueError("thresholds must be positive")
        if self.rank_threshold < self.exact_threshold:
            raise ValueError("rank_threshold must be >= exact_threshold")
        if self.purity_epsilon is None:
            object.__setattr__(self, "purity_epsilon", 1e-7 if self.mode == "exact" else 0.02)
        elif self.purity_epsilon <= 0:
            raise ValueError("purity_epsilon must be positive")

    @classmethod
    def exact(cls, **kwargs) -> "ToleranceConfig":
        return cls(mode="exact", **kwargs)

    @classmethod
    def noisy(cls, **kwargs) -> "ToleranceConfig":
        return cls(mode="noisy", **kwargs)

    def with_rank_threshold(self, value: float) -> "ToleranceConfig":
        return replace(self, rank_threshold=value)


@dataclass(frozen=True)
class ClassificationResult:
    label: str
    ranks: RankTriple
    matrices: CorrelationMatrices
    singular_values: tuple[np.ndarray, np.ndarray, np.ndarray]
    canonical_violation: float
    tolerances: ToleranceConfig


def numerical_rank(m, threshold: float) -> int:
    """Number of singular values strictly above ``threshold``."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    return int(np.count_nonzero(singular_values(m) > threshold))


def classify_ranks(ranks) -> str:
    """Class label for a rank triple; triples outside the table are UNCLASSIFIED."""
    triple = tuple(int(r) for r in ranks)
    if len(triple) != 3 or any(r not in (0, 1, 2, 3) for r in triple):
        raise ValueError(f"rank triple must have three entries in 0..3, got {ranks!r}")
    return _RANK_TO_CLASS.get(triple, "UNCLASSIFIED")


def _rank_matrices(matrices: CorrelationMatrices, tol: ToleranceConfig) -> RankTriple:
    ranks = []
    for m in matrices.as_tuple():
        if tol.mode == "noisy":
            cleaned = np.where(np.abs(m) > tol.rank_threshold, m, 0.0)
            ranks.append(numerical_rank(cleaned, tol.exact_threshold))
        else:
            ranks.append(numerical_rank(m, tol.exact_threshold))
    return RankTriple(*ranks)


def classify_observables(obs: ObservableSet13, tol: ToleranceConfig | None = None,
                         canonical_violation: float | None = None) -> ClassificationResult:
    """Classify straight from measured values, with no underlying state.

    The only canonical-basis consistency visible from 13 values is the
    physical range of the total squared concurrence; leaving [0, 3] by more
    than ten rank thresholds rejects the data.
    """
    tol = tol or ToleranceConfig.noisy()
    c2 = concurrence_sq_from_observables(obs)
    gate = 10.0 * (tol.rank_threshold if tol.mode == "noisy" else tol.exact_threshold)
    violation = max(0.0, -c2, c2 - 3.0)
    if violation > gate:
        raise TricorrError(
            f"observables violate canonical-basis consistency by {violation:.4f} "
            f"(allowed {gate:.4f}); squared total concurrence {c2:.4f}"
        )
    if canonical_violation is not None:
        violation = canonical_violation
    matrices = matricize(complete_tensor(obs))
    ranks = _rank_matrices(matrices, tol)
    svs = tuple(singular_values(m) for m in matrices.as_tuple())
    return ClassificationResult(classify_ranks(ranks), ranks, matrices, svs, violation, tol)


def classify_state(state, tol: ToleranceConfig | None = None) -> ClassificationResult:
    """Full pipeline: canonicalize, measure the 13 words, unfold, rank.

    Accepts a PureState, a (numerically pure) DensityOperator, or an
    ObservableSet13.  Density operators must have a dominant eigenvalue
    above 1 - purity_epsilon; the state is rotated to canonical form before
    measurement so the tensor-completion identities hold.
    """
    if isinstance(state, ObservableSet13):
        return classify_observables(state, tol or ToleranceConfig.noisy())
    tol = tol or ToleranceConfig.exact()
    if isinstance(state, DensityOperator):
        weight, vec = state.principal_eigenvector()
        if weight <= 1.0 - tol.purity_epsilon:
            raise TricorrError(
                f"state is not numerically pure: largest eigenvalue {weight:.6f} "
                f"<= 1 - {tol.purity_epsilon}"
            )
        psi = PureState(vec)
    elif isinstance(state, PureState):
        psi = state
    else:
        raise TypeError(f"cannot classify {type(state).__name__}")
    form, _ = canonicalize(psi)
    rho_c = from_canonical(form).to_density_operator()
    report = canonical_basis_check(rho_c, tol=1e-6)
    return classify_observables(measure13(rho_c), tol, canonical_violation=report.max_violation)


def oracle_classify(psi: PureState, tol: ToleranceConfig | None = None) -> str:
    """Brute-force classification from single-qubit marginal purities.

    A pure marginal means the qubit factors out: three pure marginals give
    SEP, exactly one gives BS-k, none gives GE.  Two pure marginals are
    numerically inconsistent for pure states and return UNCLASSIFIED.
    """
    tol = tol or ToleranceConfig.exact()
    purities = marginal_purities(psi)
    pure = [k for k, p in zip((1, 2, 3), purities) if p > 1.0 - tol.purity_epsilon]
    if len(pure) == 3:
        return "SEP"
    if len(pure) == 1:
        return f"BS-{pure[0]}"
    if len(pure) == 0:
        return "GE"
    return "UNCLASSIFIED"
