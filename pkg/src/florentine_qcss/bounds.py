"""Lower bounds on the correlation tolerance of an aperiodic QCSS and the
optimality factor rho = delta_max / bound."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass


class BranchNotApplicable(ValueError):
    """The tighter bound needs K >= 3M, M >= 2 and N >= 2."""


class UnboundedRatio(ValueError):
    """A positive tolerance was divided by a zero bound."""


class Branch(str, enum.Enum):
    LIU = "liu"
    WELCH = "welch"


class Classification(str, enum.Enum):
    OPTIMAL = "optimal"
    NEAR_OPTIMAL = "near_optimal"
    OTHER = "other"
    BELOW_BOUND = "below_bound"


RHO_TOL = 1e-12


def welch_bound(K: int, M: int, N: int) -> float:
    """``M*N*sqrt((K/M - 1) / (K*(2N - 1) - 1))``."""
    if M < 1 or N < 1 or K < M:
        raise ValueError(f"need K >= M >= 1 and N >= 1, got K={K}, M={M}, N={N}")
    denom = K * (2 * N - 1) - 1
    if denom <= 0:
        raise ValueError("K(2N-1) - 1 must be positive")
    return M * N * math.sqrt((K / M - 1) / denom)


def liu_applies(K: int, M: int, N: int) -> bool:
    return K >= 3 * M and M >= 2 and N >= 2


def liu_bound(K: int, M: int, N: int) -> float:
    """``sqrt(M*N*(1 - 2*sqrt(M/(3K))))``, valid for K >= 3M, M >= 2, N >= 2."""
    if not liu_applies(K, M, N):
        raise BranchNotApplicable(f"K={K}, M={M}, N={N}")
    return math.sqrt(M * N * (1 - 2 * math.sqrt(M / (3 * K))))


def classify(rho: float) -> Classification:
    if rho < 1 - RHO_TOL:
        return Classification.BELOW_BOUND
    if rho <= 1 + RHO_TOL:
        return Classification.OPTIMAL
    if rho <= 2:
        return Classification.NEAR_OPTIMAL
    return Classification.OTHER


@dataclass(frozen=True)
class BoundsReport:
    K: int
    M: int
    N: int
    delta_max: float
    welch: float
    liu: float | None
    rho: float
    branch: Branch
    classification: Classification

    def to_dict(self) -> dict:
        d = asdict(self)
        d["branch"] = self.branch.value
        d["classification"] = self.classification.value
        return d


def optimality_factor(K: int, M: int, N: int, delta: float) -> BoundsReport:
    if delta < 0:
        raise ValueError("delta must be non-negative")
    welch = welch_bound(K, M, N)
    if liu_applies(K, M, N):
        liu = liu_bound(K, M, N)
        branch, bound = Branch.LIU, liu
    else:
        liu = None
        branch, bound = Branch.WELCH, welch
    if bound == 0:
        if delta > 0:
            raise UnboundedRatio(f"delta={delta} against a zero bound")
        # A CCC meets the zero bound with zero tolerance.
        rho = 1.0
    else:
        rho = delta / bound
    return BoundsReport(K, M, N, float(delta), welch, liu, rho, branch, classify(rho))


def asymptotic_rho(F: int) -> float:
    """rho of an (N*F, N, N, N)-QCSS: ``1/sqrt(1 - 2/sqrt(3F))``, whatever N is."""
    if 3 * F <= 4:
        raise ValueError("need 3F > 4")
    return 1 / math.sqrt(1 - 2 / math.sqrt(3 * F))
