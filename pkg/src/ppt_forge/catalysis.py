"""Catalytic convertibility under LOCC (screen) and PPT with maximally entangled catalysts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import closed_form
from .feasibility import (FEASIBLE, MaxEnt, SolverGuardError, TransformQuery, decide,
                          ENTROPY_TOL)
from .spectra import SchmidtVector, f_value, renyi_entropy, s_half_power, tensor

SCREEN_TOL = 1e-12

PASS = "Pass"
FAIL = "Fail"
INCONCLUSIVE = "Inconclusive"



def _grid(lo: float, hi: float, n: int, extra=()) -> tuple[float, ...]:
    pts = {round(float(v), 12) for v in np.geomspace(lo, hi, n)} | set(extra)
    return tuple(sorted(pts))


# geometric grids; the orders 1/2, 1 and inf are added explicitly
DEFAULT_S_GRID = _grid(2.0**-10, 32.0, 64, (0.5, 1.0)) + (math.inf,)
DEFAULT_F_GRID = tuple(-v for v in reversed(_grid(2.0**-10, 32.0, 63))) + (0.0,)
DEFAULT_CONJ_GRID = _grid(0.5, 32.0, 64, (1.0,)) + (math.inf,)


@dataclass(frozen=True)
class CatalysisQuery:
    K: int
    target: SchmidtVector
    c_max: int = 64

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 2:
            raise ValueError(f"K must be an integer >= 2, got {self.K}")
        if int(self.c_max) != self.c_max or self.c_max < 1:
            raise ValueError(f"catalyst budget must be >= 1, got {self.c_max}")


def ppt_maxent_catalysis_possible(K: int, lam: SchmidtVector) -> bool:
    """Whether Φ_C ⊗ Φ_K → Φ_C ⊗ ρ_λ by PPT for some catalyst rank C."""
    lam = lam.nonzero()
    if lam.is_uniform(K):
        return True
    return renyi_entropy(lam, 0.5) < math.log2(K) - ENTROPY_TOL


@dataclass
class ScanEntry:
    C: int
    T1: float
    T: Optional[float]
    verdict: str
    rule: Optional[str] = None

    def to_json(self) -> dict:
        return {"C": self.C, "T1": self.T1, "T": self.T, "verdict": self.verdict,
                "rule": self.rule}


@dataclass
class CatalysisReport:
    possible: bool
    minimal_C: Optional[int]
    limit_value: float
    scan: list = field(default_factory=list)

    @property
    def certain(self) -> bool:
        """No inconclusive catalyst rank precedes the reported minimum."""
        stop = self.minimal_C if self.minimal_C is not None else math.inf
        return not any(e.verdict == INCONCLUSIVE and e.C < stop for e in self.scan)

    def to_json(self) -> dict:
        return {"possible": self.possible, "minimal_C": self.minimal_C,
                "limit_value": self.limit_value, "certain": self.certain,
                "scan": [e.to_json() for e in self.scan]}


def catalyst_scan(query: CatalysisQuery, max_sdp_dim: int | None = None) -> CatalysisReport:
    lam = query.target.nonzero()
    K = query.K
    limit = s_half_power(lam) / K
    report = CatalysisReport(possible=ppt_maxent_catalysis_possible(K, lam), minimal_C=None,
                             limit_value=limit)
    if not report.possible:
        return report
    kwargs = {} if max_sdp_dim is None else {"max_sdp_dim": max_sdp_dim}
    for C in range(1, query.c_max + 1):
        target = tensor(lam, SchmidtVector.uniform(C))
        KC = K * C
        t1 = closed_form.t1_value(target, KC)
        try:
            v = decide(TransformQuery(MaxEnt(KC), target), **kwargs)
        except SolverGuardError:
            report.scan.append(ScanEntry(C, t1, None, INCONCLUSIVE))
            continue
        report.scan.append(ScanEntry(C, t1, v.T, v.decision, v.rule))
        if v.decision == FEASIBLE:
            report.minimal_C = C
            break
    return report


def minimal_catalyst_rank(query: CatalysisQuery) -> Optional[int]:
    return catalyst_scan(query).minimal_C


@dataclass(frozen=True)
class ScreenResult:
    status: str
    witness: Optional[float] = None
    condition: Optional[str] = None
    conjectural: bool = False

    def to_json(self) -> dict:
        w = self.witness
        return {"status": self.status,
                "witness": None if w is None else ("inf" if math.isinf(w) else w),
                "condition": self.condition, "certifying": False,
                "conjectural": self.conjectural}


def _padded_pair(lam: SchmidtVector, mu: SchmidtVector):
    n = max(len(lam), len(mu))
    a = np.concatenate([np.zeros(n - len(lam)), lam.array])
    b = np.concatenate([np.zeros(n - len(mu)), mu.array])
    return SchmidtVector(tuple(a.tolist())), SchmidtVector(tuple(b.tolist()))


def locc_catalysis_screen(lam: SchmidtVector, mu: SchmidtVector,
                          t_grid: Sequence[float] | None = None,
                          f_grid: Sequence[float] | None = None) -> ScreenResult:
    """Check the strict Rényi and f_t inequalities for λ → μ on sampled orders.

    A Pass only means no violation on the grid; it certifies nothing.
    """
    lam, mu = _padded_pair(lam, mu)
    if np.allclose(lam.array, mu.array, atol=SCREEN_TOL, rtol=0):
        raise ValueError("lambda and mu coincide up to permutation")
    if lam.rank() < len(lam) and mu.rank() < len(mu):
        raise ValueError("lambda and mu both have vanishing components")
    t_grid = DEFAULT_S_GRID if t_grid is None else t_grid
    f_grid = DEFAULT_F_GRID if f_grid is None else f_grid
    unsure = None
    for t in t_grid:
        if not t > 0:
            raise ValueError(f"Renyi grid must lie in (0, inf], got {t}")
        diff = renyi_entropy(lam, t) - renyi_entropy(mu, t)
        if diff < -SCREEN_TOL:
            return ScreenResult(FAIL, t, "S_t")
        if diff <= SCREEN_TOL and unsure is None:
            unsure = (t, "S_t")
    for t in f_grid:
        if t > 0:
            raise ValueError(f"f_t grid must lie in (-inf, 0], got {t}")
        a, b = f_value(lam, t), f_value(mu, t)
        if a == b == -math.inf:
            return ScreenResult(FAIL, t, "f_t")
        if a - b < -SCREEN_TOL:
            return ScreenResult(FAIL, t, "f_t")
        if a - b <= SCREEN_TOL and unsure is None:
            unsure = (t, "f_t")
    if unsure is not None:
        return ScreenResult(INCONCLUSIVE, unsure[0], unsure[1])
    return ScreenResult(PASS)


def ppt_catalysis_conjecture_screen(lam: SchmidtVector, mu: SchmidtVector,
                                    t_grid: Sequence[float] | None = None) -> ScreenResult:
    """Sampled check of the conjectured PPT catalysis condition S_t(λ) > S_t(μ), t >= 1/2."""
    a, b = _padded_pair(lam, mu)
    if np.allclose(a.array, b.array, atol=SCREEN_TOL, rtol=0):
        raise ValueError("lambda and mu coincide up to permutation")
    for t in (DEFAULT_CONJ_GRID if t_grid is None else t_grid):
        if t < 0.5:
            raise ValueError(f"conjecture screen orders must be >= 1/2, got {t}")
        if renyi_entropy(lam, t) - renyi_entropy(mu, t) <= SCREEN_TOL:
            return ScreenResult(FAIL, t, "S_t", conjectural=True)
    return ScreenResult(PASS, conjectural=True)
