"""The semidefinite program T(K; λ) for Φ_K → ρ_λ under PPT operations.

Coefficients live in lower-triangular d×d tables indexed by the ascending
Schmidt order: ``s[i, j]`` for i >= j, ``a[i, j]`` (and the dual ``mu``,
``t``) for i > j.  Entries above the diagonal are unused and kept at zero.

The d²×d² operator ``Σ s_ij σ_ijᴳ + Σ a_ij α_ijᴳ`` splits into a diagonal
part with entries (s_ij + a_ij)/2 on |ij⟩, |ji⟩ and a d×d block on
span{|ii⟩} with M_ii = s_ii, M_ij = (s_ij - a_ij)/2.  The solver works on
that reduced form; :func:`full_operator` builds the explicit operator so the
reduction can be checked.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ipm import ConeProblem, solve_cone
from .spectra import SchmidtVector, ZERO_TOL, _as_vector, s_half_power

FEAS_TOL = 1e-9
DEFAULT_GUARD_DIM = 6


def guard_dim() -> int:
    return int(os.environ.get("PPT_FORGE_GUARD_DIM", DEFAULT_GUARD_DIM))


def lower_pairs(d: int, strict: bool = False) -> list[tuple[int, int]]:
    """Row-major lower-triangle index order used everywhere (tables, JSON, solver)."""
    return [(i, j) for i in range(d) for j in range(i if strict else i + 1)]


def table_to_list(table: np.ndarray, strict: bool) -> list[float]:
    return [float(table[i, j]) for i, j in lower_pairs(table.shape[0], strict)]


def list_to_table(values: Sequence[float], d: int, strict: bool) -> np.ndarray:
    pairs = lower_pairs(d, strict)
    if len(values) != len(pairs):
        raise ValueError(f"expected {len(pairs)} entries for d={d}, got {len(values)}")
    out = np.zeros((d, d))
    for (i, j), v in zip(pairs, values):
        out[i, j] = v
    return out


@dataclass(frozen=True)
class ReducedSdp:
    K: int
    lam: SchmidtVector

    @property
    def d(self) -> int:
        return len(self.lam)

    @property
    def w(self) -> np.ndarray:
        r = np.sqrt(self.lam.array)
        return np.tril(np.outer(r, r))

    @property
    def s_lower(self) -> np.ndarray:
        return self.w / (self.K + 1)

    @property
    def a_lower(self) -> np.ndarray:
        return np.tril(self.w, -1) / (self.K - 1)

    @property
    def n_s(self) -> int:
        return self.d * (self.d + 1) // 2

    @property
    def n_a(self) -> int:
        return self.d * (self.d - 1) // 2


def build_reduced(lam: SchmidtVector | Sequence[float], K: int) -> ReducedSdp:
    lam = _as_vector(lam)
    if int(K) != K or K < 2:
        raise ValueError(f"K must be an integer >= 2, got {K}")
    if any(c <= ZERO_TOL for c in lam.coeffs):
        raise ValueError("target has zero Schmidt coefficients; strip them first "
                         "(SchmidtVector.nonzero())")
    return ReducedSdp(K=int(K), lam=lam)


# --- operator bookkeeping -------------------------------------------------

def partial_transpose(X: np.ndarray, d: int) -> np.ndarray:
    """|ij⟩⟨kl|ᴳ = |il⟩⟨kj|, as an index permutation."""
    return X.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def _ket(d, i, j):
    v = np.zeros(d * d)
    v[i * d + j] = 1.0
    return v


def sigma(d: int, i: int, j: int) -> np.ndarray:
    if i == j:
        v = _ket(d, i, i)
        return np.outer(v, v)
    v = _ket(d, i, j) + _ket(d, j, i)
    return np.outer(v, v) / 2


def alpha(d: int, i: int, j: int) -> np.ndarray:
    v = _ket(d, i, j) - _ket(d, j, i)
    return np.outer(v, v) / 2


def full_operator(s: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Σ s_ij σ_ijᴳ + Σ a_ij α_ijᴳ as an explicit d²×d² matrix."""
    d = s.shape[0]
    X = np.zeros((d * d, d * d))
    for i, j in lower_pairs(d):
        X += s[i, j] * sigma(d, i, j)
    for i, j in lower_pairs(d, strict=True):
        X += a[i, j] * alpha(d, i, j)
    return partial_transpose(X, d)


def block_parts(s: np.ndarray, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(off-block diagonal entries (s_ij + a_ij)/2 for i > j, the d×d block M)."""
    d = s.shape[0]
    off = np.array([(s[i, j] + a[i, j]) / 2 for i, j in lower_pairs(d, strict=True)])
    L = np.tril(s - a, -1) / 2
    M = L + L.T + np.diag(np.diag(s))
    return off, M


def block_spectrum(s: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Eigenvalues of the full operator predicted from the block form (sorted)."""
    off, M = block_parts(s, a)
    return np.sort(np.concatenate([np.repeat(off, 2), np.linalg.eigvalsh(M)]))


# --- objectives and feasibility ------------------------------------------

def primal_objective(s: np.ndarray, a: np.ndarray) -> float:
    return float(np.sum(np.tril(s)) + np.sum(np.tril(a, -1)))


def dual_objective(reduced: ReducedSdp, mu: np.ndarray, t: np.ndarray) -> float:
    K, w = reduced.K, reduced.w
    base = (K * s_half_power(reduced.lam) - 1) / (K * K - 1)
    return float(base - np.sum(np.tril(mu) * w) / (K + 1)
                 - np.sum(np.tril(t, -1) * w) / (K - 1))


def primal_violation(reduced: ReducedSdp, s: np.ndarray, a: np.ndarray) -> float:
    """Largest violation of the primal constraints (<= 0 means feasible)."""
    d = reduced.d
    lo = [reduced.s_lower[i, j] - s[i, j] for i, j in lower_pairs(d)]
    lo += [reduced.a_lower[i, j] - a[i, j] for i, j in lower_pairs(d, strict=True)]
    off, M = block_parts(s, a)
    psd = [-np.linalg.eigvalsh(M)[0]] + list(-off)
    return float(max(lo + psd))


def dual_violation(reduced: ReducedSdp, mu: np.ndarray, t: np.ndarray) -> float:
    """Largest violation of μ ≤ 1, t ≤ 1 and the PSD condition (<= 0 means feasible)."""
    d = reduced.d
    up = [mu[i, j] - 1 for i, j in lower_pairs(d)]
    up += [t[i, j] - 1 for i, j in lower_pairs(d, strict=True)]
    off, N = block_parts(mu, -t)  # N_ij = (μ_ij - t_ij)/2, off = (μ_ij + t_ij)/2
    psd = [-np.linalg.eigvalsh(N)[0]] + list(-off)
    return float(max(up + psd))


# --- solving ----------------------------------------------------------------

@dataclass
class SdpCertificate:
    K: int
    lam: SchmidtVector
    primal_value: float
    dual_value: float
    s: np.ndarray
    a: np.ndarray
    mu: np.ndarray
    t: np.ndarray
    iterations: int
    status: str

    @property
    def gap(self) -> float:
        return self.primal_value - self.dual_value

    @property
    def T(self) -> float:
        return self.primal_value

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "lambda": list(self.lam.coeffs),
            "T": self.primal_value,
            "dual_value": self.dual_value,
            "gap": self.gap,
            "status": self.status,
            "iterations": self.iterations,
            "s": table_to_list(self.s, strict=False),
            "a": table_to_list(self.a, strict=True),
            "mu": table_to_list(self.mu, strict=False),
            "t": table_to_list(self.t, strict=True),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "SdpCertificate":
        lam = SchmidtVector.from_values(doc["lambda"])
        d = len(lam)
        return cls(K=int(doc["K"]), lam=lam, primal_value=float(doc["T"]),
                   dual_value=float(doc["dual_value"]),
                   s=list_to_table(doc["s"], d, False), a=list_to_table(doc["a"], d, True),
                   mu=list_to_table(doc["mu"], d, False), t=list_to_table(doc["t"], d, True),
                   iterations=int(doc["iterations"]), status=doc["status"])


def cone_problem(reduced: ReducedSdp) -> ConeProblem:
    d = reduced.d
    sp, ap = lower_pairs(d), lower_pairs(d, strict=True)
    ns, na = len(sp), len(ap)
    n = ns + na
    A = np.zeros((n, d, d))
    for k, (i, j) in enumerate(sp):
        if i == j:
            A[k, i, i] = 1.0
        else:
            A[k, i, j] = A[k, j, i] = 0.5
    for k, (i, j) in enumerate(ap):
        A[ns + k, i, j] = A[ns + k, j, i] = -0.5
    # x >= lower bounds, then s_ij + a_ij >= 0
    G = np.vstack([np.eye(n), np.zeros((na, n))])
    for k, (i, j) in enumerate(ap):
        G[n + k, sp.index((i, j))] = 1.0
        G[n + k, ns + k] = 1.0
    h = np.concatenate([[reduced.s_lower[i, j] for i, j in sp],
                        [reduced.a_lower[i, j] for i, j in ap], np.zeros(na)])
    return ConeProblem(c=np.ones(n), G=G, h=h, A=A, A0=np.zeros((d, d)))


def solve(reduced: ReducedSdp, max_iter: int = 200) -> SdpCertificate:
    d = reduced.d
    sp, ap = lower_pairs(d), lower_pairs(d, strict=True)
    ns, na = len(sp), len(ap)
    prob = cone_problem(reduced)
    n = ns + na
    # s = a = 2 is strictly primal feasible; all multipliers 1/2 with Z = I/2
    # is strictly dual feasible (μ = t = 0 sits on the cone boundary).
    res = solve_cone(prob, x0=np.full(n, 2.0), z0=np.full(n + na, 0.5), Z0=np.eye(d) / 2,
                     max_iter=max_iter)
    s = list_to_table(res.x[:ns], d, strict=False)
    a = list_to_table(res.x[ns:], d, strict=True)
    q = res.z[n:]
    mu = np.diag(np.diag(res.Z)).astype(float)
    t = np.zeros((d, d))
    for k, (i, j) in enumerate(ap):
        mu[i, j] = res.Z[i, j] + q[k]
        t[i, j] = q[k] - res.Z[i, j]
    dual = dual_objective(reduced, mu, t)
    return SdpCertificate(K=reduced.K, lam=reduced.lam, primal_value=res.primal_value,
                          dual_value=dual, s=s, a=a, mu=mu, t=t,
                          iterations=res.iterations, status=res.status)


def t_value(lam: SchmidtVector | Sequence[float], K: int) -> float:
    return solve(build_reduced(lam, K)).T


# --- closed-form bounds -----------------------------------------------------

def lower_bound(lam: SchmidtVector | Sequence[float], K: int) -> float:
    """Dual objective at μ = t = 0."""
    return (K * s_half_power(lam) - 1) / (K * K - 1)


def upper_bound_point(lam: SchmidtVector | Sequence[float], K: int) -> tuple[np.ndarray, np.ndarray]:
    """An explicit primal-feasible (s, a) built from the lower-bound corner.

    Off-diagonal s_ij and all a_ij sit at their lower bounds, which makes
    M = diag(e) - vvᵀ/(K²-1) with v = sqrt(λ) and e_i = s_ii + λ_i/(K²-1).
    The cheapest diagonal keeping M PSD is found by water-filling
    e_i = max(Kλ_i/(K²-1), sqrt(λ_i)/ν) with Σ λ_i/e_i = K²-1.
    The point with s = a = sqrt(λ_i λ_j)/(K-1) is also tried; the cheaper wins.
    """
    red = build_reduced(lam, K)
    d, lamv = red.d, red.lam.array
    r = np.sqrt(lamv)
    kap = K * K - 1
    floor = K * lamv / kap
    candidates = []
    if d <= K:
        candidates.append(floor)
    else:
        order = np.argsort(-lamv, kind="stable")
        for b in range(K):
            free = np.ones(d, dtype=bool)
            free[order[:b]] = False
            scale = K * r[free].sum() / (kap * (K - b))
            e = np.where(free, r * scale, floor)
            if np.all(e >= floor * (1 - 1e-14)):
                candidates.append(np.maximum(e, floor))
    best = None
    for e in candidates:
        s = np.tril(red.s_lower.copy())
        np.fill_diagonal(s, e - lamv / kap)
        a = red.a_lower.copy()
        if best is None or primal_objective(s, a) < primal_objective(*best):
            best = (s, a)
    s_l, a_l = red.w / (K - 1), red.a_lower.copy()
    if best is None or primal_objective(s_l, a_l) < primal_objective(*best):
        best = (s_l, a_l)
    return best


def bounds(lam: SchmidtVector | Sequence[float], K: int) -> tuple[float, float]:
    """(lower, upper) on T(K; λ), both from explicit feasible points."""
    build_reduced(lam, K)
    return lower_bound(lam, K), primal_objective(*upper_bound_point(lam, K))


# --- unreduced oracle -------------------------------------------------------

def rho_gamma(lam: SchmidtVector) -> np.ndarray:
    d = len(lam)
    psi = np.zeros(d * d)
    for i, c in enumerate(lam.coeffs):
        psi[i * d + i] = np.sqrt(c)
    return partial_transpose(np.outer(psi, psi), d)


def solve_full_oracle(lam: SchmidtVector | Sequence[float], K: int,
                      max_dim: int | None = None) -> float:
    """min Tr P over P ≥ 0, -(K-1)Pᴳ ≤ ρᴳ ≤ (K+1)Pᴳ, solved with a generic conic solver."""
    import cvxpy as cp

    lam = _as_vector(lam)
    build_reduced(lam, K)
    d = len(lam)
    limit = guard_dim() if max_dim is None else max_dim
    if d > limit:
        raise ValueError(f"oracle dimension guard exceeded: d={d} > {limit} "
                         "(set PPT_FORGE_GUARD_DIM to raise it)")
    R = rho_gamma(lam)
    P = cp.Variable((d * d, d * d), symmetric=True)
    PG = cp.partial_transpose(P, dims=[d, d], axis=1)
    PG = (PG + PG.T) / 2
    cons = [P >> 0, (K + 1) * PG - R >> 0, R + (K - 1) * PG >> 0]
    prob = cp.Problem(cp.Minimize(cp.trace(P)), cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-10, tol_gap_rel=1e-10,
               tol_feas=1e-10)
    if prob.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"oracle solver status {prob.status}")
    return float(prob.value)
