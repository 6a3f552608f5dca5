"""Concurrence per cut, total concurrence, and global entanglement Q.

Two independent routes compute the same quantity: partial traces of the
state (the oracle), and a sum of squared canonical-basis expectation
values.  Q = C_T^2 / 3 is zero exactly on separable states, at most 2/3
on biseparable ones, and reaches 1 on the GHZ state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .correlations import ObservableSet13
from .errors import TricorrError
from .states import PureState, marginal_purities

# Multiplicity of each measured word in the expectation-value expansion of
# C_T^2: the three partners of XXX and the single partners of XXZ, XZX and
# ZXY contribute equal squares, giving 19 terms from 13 values.
_SQUARE_WEIGHTS = {"XXX": 4.0, "XXZ": 2.0, "XZX": 2.0, "ZXY": 2.0}

_C2_FLOOR = -0.05
_C2_CEILING = 3.15


@dataclass(frozen=True)
class EntanglementReport:
    """Per-cut squared concurrences (when available), their total, and Q."""

    c_sq: tuple[float, float, float] | None
    c_total_sq: float
    q_global: float


@dataclass(frozen=True)
class BoundCheckResult:
    passed: bool
    checks: tuple[tuple[str, float, float, bool], ...]


def concurrence_oracle(psi: PureState) -> EntanglementReport:
    """Concurrences from reduced-density-matrix purities.

    c_j^2 = 2 (1 - tr rho_j^2); Q is the total over three cuts divided by 3.
    """
    purities = marginal_purities(psi)
    c_sq = tuple(max(0.0, 2.0 * (1.0 - p)) for p in purities)
    total = sum(c_sq)
    return EntanglementReport(c_sq, total, total / 3.0)


def concurrence_sq_from_observables(obs: ObservableSet13) -> float:
    """Raw expectation-value expansion of the total squared concurrence.

    Valid for canonical-basis data only; no clamping or range checks.
    """
    return sum(_SQUARE_WEIGHTS.get(w, 1.0) * v * v for w, v in obs.items()) - 1.0


def concurrence_from_observables(obs: ObservableSet13) -> EntanglementReport:
    """Total concurrence and Q from the 13 measured values.

    Per-cut values are not recoverable on this route.  Small negative
    totals from noisy data (down to -0.05) clamp to zero with a warning;
    anything outside [-0.05, 3.15] signals inconsistent observables.
    """
    total = concurrence_sq_from_observables(obs)
    if total < _C2_FLOOR or total > _C2_CEILING:
        raise TricorrError(
            f"total squared concurrence {total:.4f} outside [{_C2_FLOOR}, {_C2_CEILING}]; "
            "observables are inconsistent with a canonical-basis pure state"
        )
    if total < 0.0:
        warnings.warn(f"clamping slightly negative squared concurrence {total:.4f} to 0")
        total = 0.0
    q = min(max(total / 3.0, 0.0), 1.0)
    return EntanglementReport(None, total, q)


def bound_check(report: EntanglementReport, claimed_class: str, mode: str = "exact") -> BoundCheckResult:
    """Verify Q against the class-wise upper bounds.

    Separable states must have Q ~ 0, biseparable ones Q <= 2/3, and every
    state Q <= 1.  ``mode`` picks the tolerance: 1e-6 exact, 0.1 noisy.
    """
    eps = 1e-6 if mode == "exact" else 0.1
    q = report.q_global
    checks = []
    if claimed_class == "SEP":
        checks.append(("separable: Q ~ 0", eps, q, q < eps))
    if claimed_class.startswith("BS-"):
        checks.append(("biseparable: Q <= 2/3", 2.0 / 3.0 + eps, q, q <= 2.0 / 3.0 + eps))
    checks.append(("any state: Q <= 1", 1.0 + eps, q, q <= 1.0 + eps))
    return BoundCheckResult(all(ok for *_, ok in checks), tuple(checks))
