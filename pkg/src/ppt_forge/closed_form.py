"""Closed form T₁(K; λ): the dual optimum restricted to rank-one certificates.

A rank-one dual point is μ_ij = u_i u_j, t_ij = -μ_ij.  With x_i = sqrt(λ_i) u_i
the problem becomes maximizing the quadratic form ``delta`` over the box
|x_i| <= sqrt(λ_i).  The maximizer lives on a face where the c smallest
coordinates are pinned at their caps and the rest share the common
stationary value; ``c_star`` picks the face.

Indices are 0-based positions in the ascending coefficient order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .spectra import SchmidtVector, ZERO_TOL, _as_vector, s_half_power

BOX_TOL = 1e-12
FACE_GUARD_DIM = 5


def _check(lam, K):
    lam = _as_vector(lam)
    if len(lam) == 0:
        raise ValueError("empty coefficient vector")
    if int(K) != K or K < 2:
        raise ValueError(f"K must be an integer >= 2, got {K}")
    if lam.coeffs[0] <= ZERO_TOL:
        raise ValueError("coefficient vector has zero components; strip them first")
    return lam, int(K)


def c_range(d: int, K: int) -> range:
    # c = 0 is the empty face (stationary point x = 0); it only enters when d < K
    return range(max(0, 1 + d - K), d)


def c_star(lam: SchmidtVector | Sequence[float], K: int) -> int:
    lam, K = _check(lam, K)
    r = np.sqrt(lam.array)
    d = r.size
    for c in c_range(d, K):
        if r[:c].sum() / (K + c - d) <= r[c]:
            return c
    return d


def _correction(r: np.ndarray, c: int, K: int) -> float:
    d = r.size
    m = K + c - d
    head = r[:c]
    return K / ((K * K - 1) * m) * (head.sum() ** 2 - m * float(head @ head))


def t1_value(lam: SchmidtVector | Sequence[float], K: int) -> float:
    lam, K = _check(lam, K)
    c = c_star(lam, K)
    X = s_half_power(lam)
    if c == len(lam):
        return float((X - 1) / (K - 1))
    return float((K * X - 1) / (K * K - 1) + _correction(np.sqrt(lam.array), c, K))


def delta(x: Sequence[float], lam: SchmidtVector | Sequence[float], K: int) -> float:
    """Σ_{i>j} x_i x_j/(K-1) - Σ_{i>=j} x_i x_j/(K+1) on the box |x_i| <= sqrt(λ_i)."""
    lam, K = _check(lam, K)
    x = np.asarray(x, dtype=float)
    if x.shape != (len(lam),):
        raise ValueError(f"x must have length {len(lam)}")
    if np.any(np.abs(x) > np.sqrt(lam.array) + BOX_TOL):
        raise ValueError("x lies outside the box |x_i| <= sqrt(lambda_i)")
    total, sq = x.sum(), float(x @ x)
    cross = (total * total - sq) / 2
    return cross / (K - 1) - (cross + sq) / (K + 1)


def stationary_point(lam: SchmidtVector | Sequence[float], K: int,
                     face: Iterable[int]) -> np.ndarray | None:
    """Stationary point of ``delta`` on the face pinning ``face`` at +sqrt(λ_i).

    Returns None when the point is not inside the face (or does not exist).
    """
    lam, K = _check(lam, K)
    r = np.sqrt(lam.array)
    d = r.size
    C = sorted(set(face))
    rest = [j for j in range(d) if j not in C]
    x = np.zeros(d)
    x[C] = r[C]
    if not rest:
        return x
    m = K + len(C) - d
    if m <= 0:
        return None
    v = r[C].sum() / m
    if v > r[rest].min():
        return None
    x[rest] = v
    return x


def face_delta(lam: SchmidtVector | Sequence[float], K: int, face: Iterable[int]) -> float:
    """Δ_C from the closed expression (valid when the face admits a stationary point)."""
    lam, K = _check(lam, K)
    r = np.sqrt(lam.array)
    C = sorted(set(face))
    m = K + len(C) - r.size
    sr = r[C].sum()
    return float(K / ((K * K - 1) * m) * (sr * sr - m * float(r[C] @ r[C])))


@dataclass(frozen=True)
class FaceSearchResult:
    c_star: int
    t1_value: float
    x_point: np.ndarray
    delta_value: float


def face_search(lam: SchmidtVector | Sequence[float], K: int) -> FaceSearchResult:
    lam, K = _check(lam, K)
    c = c_star(lam, K)
    x = stationary_point(lam, K, range(c))
    if x is None:  # cannot happen for c_star; guards against tolerance drift
        raise ArithmeticError("c_star face has no stationary point")
    return FaceSearchResult(c_star=c, t1_value=t1_value(lam, K), x_point=x,
                            delta_value=delta(x, lam, K))


def face_bruteforce(lam: SchmidtVector | Sequence[float], K: int,
                    max_dim: int = FACE_GUARD_DIM) -> float:
    """T₁ by enumerating every positive-orthant face and the extreme point sqrt(λ)."""
    lam, K = _check(lam, K)
    d = len(lam)
    if d > max_dim:
        raise ValueError(f"face enumeration limited to d <= {max_dim}, got {d}")
    best = delta(np.sqrt(lam.array), lam, K)
    for size in range(d):
        for C in itertools.combinations(range(d), size):
            x = stationary_point(lam, K, C)
            if x is not None:
                best = max(best, delta(x, lam, K))
    return float((K * s_half_power(lam) - 1) / (K * K - 1) + best)


def rank1_dual_point(lam: SchmidtVector | Sequence[float], K: int) -> tuple[np.ndarray, np.ndarray]:
    """(μ, t) tables of the rank-one dual point attaining T₁."""
    lam, K = _check(lam, K)
    x = face_search(lam, K).x_point
    u = x / np.sqrt(lam.array)
    mu = np.tril(np.outer(u, u))
    t = -np.tril(mu, -1)
    return mu, t


def swap_improves(lam: SchmidtVector | Sequence[float], K: int, C0: Iterable[int],
                  n1: int, n2: int, tol: float = 1e-12) -> bool:
    """Exchanging n1 for a smaller-coefficient n2 keeps a stationary point and never lowers Δ_C."""
    lam, K = _check(lam, K)
    C0 = set(C0)
    d = len(lam)
    if not (0 <= n1 < d and 0 <= n2 < d) or n1 in C0 or n2 in C0 or n1 == n2:
        raise ValueError("n1, n2 must be distinct indices outside C0")
    if not lam.coeffs[n1] > lam.coeffs[n2]:
        raise ValueError("swap requires lambda[n1] > lambda[n2]")
    C1, C2 = C0 | {n1}, C0 | {n2}
    if stationary_point(lam, K, C1) is None:
        raise ValueError("face C0 + {n1} has no stationary point")
    if stationary_point(lam, K, C2) is None:
        return False
    return face_delta(lam, K, C2) >= face_delta(lam, K, C1) - tol
