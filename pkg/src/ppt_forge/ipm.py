"""Small dense primal-dual interior-point method for LP+SDP in inequality form.

Primal::

    minimize    c @ x
    subject to  G @ x - h >= 0                 (orthant, slack s)
                sum_k x[k] * A[k] - A0 >= 0    (one PSD block, slack S)

Dual::

    maximize    h @ z + <A0, Z>
    subject to  G.T @ z + A*(Z) = c,  z >= 0,  Z >= 0

The primal iterate must start strictly feasible and stays so (slacks are
recomputed from x every iteration).  The dual start only needs to be interior;
any equality residual is driven out by the Newton steps.  Search direction is
HKM with a Mehrotra predictor-corrector.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

OPTIMAL = "Optimal"
MAX_ITER = "MaxIter"
DEGENERATE = "Degenerate"


@dataclass
class ConeProblem:
    c: np.ndarray
    G: np.ndarray
    h: np.ndarray
    A: np.ndarray  # shape (n, m, m), symmetric slices
    A0: np.ndarray

    def __post_init__(self):
        n = self.c.size
        if self.G.shape[1] != n or self.A.shape[0] != n:
            raise ValueError("inconsistent problem dimensions")

    def lin_slack(self, x):
        return self.G @ x - self.h

    def psd_slack(self, x):
        return np.tensordot(x, self.A, axes=1) - self.A0

    def adjoint(self, Z):
        """A*(Z)[k] = <A[k], Z>."""
        return np.tensordot(self.A, Z, axes=([1, 2], [0, 1]))


@dataclass
class IpmResult:
    x: np.ndarray
    z: np.ndarray
    Z: np.ndarray
    primal_value: float
    dual_value: float
    iterations: int
    status: str
    dual_residual: float
    history: list = field(default_factory=list)

    @property
    def gap(self) -> float:
        return self.primal_value - self.dual_value


def _max_step_orthant(v, dv):
    neg = dv < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-v[neg] / dv[neg]))


def _max_step_psd(L, dX):
    # L is the Cholesky factor of the current iterate X = L L^T.
    Li = sla.solve_triangular(L, dX, lower=True)
    W = sla.solve_triangular(L, Li.T, lower=True)
    lmin = np.linalg.eigvalsh((W + W.T) / 2)[0]
    return np.inf if lmin >= 0 else -1.0 / lmin


def _sym(X):
    return (X + X.T) / 2


def solve_cone(prob: ConeProblem, x0, z0, Z0, *, max_iter: int = 200,
               gap_tol: float = 1e-10, accept_gap: float = 1e-7,
               feas_tol: float = 1e-9, step_frac: float = 0.98) -> IpmResult:
    x = np.array(x0, dtype=float)
    z = np.array(z0, dtype=float)
    Z = np.array(Z0, dtype=float)
    G, h, c = prob.G, prob.h, prob.c
    nl, m = h.size, prob.A0.shape[0]
    nu = nl + m
    eye = np.eye(m)

    s = prob.lin_slack(x)
    S = prob.psd_slack(x)
    if np.any(s <= 0) or np.any(z <= 0):
        raise ValueError("interior-point start must be strictly inside the orthant")
    try:
        LS = np.linalg.cholesky(S)
        np.linalg.cholesky(Z)
    except np.linalg.LinAlgError:
        raise ValueError("interior-point start must be positive definite") from None

    status = MAX_ITER
    singular = False
    best = None
    history = []
    it = 0
    for it in range(1, max_iter + 1):
        rd = c - G.T @ z - prob.adjoint(Z)
        pobj = float(c @ x)
        dobj = float(h @ z + np.sum(prob.A0 * Z))
        mu = (float(s @ z) + float(np.sum(S * Z))) / nu
        rd_norm = float(np.max(np.abs(rd))) if rd.size else 0.0
        history.append((pobj, dobj, mu, rd_norm))
        if rd_norm <= feas_tol and (best is None or pobj - dobj < best[3] - best[4]):
            best = (x.copy(), z.copy(), Z.copy(), pobj, dobj, rd_norm, it)
        if rd_norm <= feas_tol and pobj - dobj <= gap_tol * max(1.0, abs(pobj)):
            status = OPTIMAL
            it -= 1
            break

        Sinv = sla.cho_solve((LS, True), eye)
        Sinv = _sym(Sinv)
        d = z / s
        # HKM Schur complement: H[k,l] = G_k D G_l + <A_k, S^-1 A_l Z>
        SA = np.einsum("ij,njk->nik", Sinv, prob.A)
        SAZ = SA @ Z
        H = G.T @ (d[:, None] * G) + np.einsum("kij,lji->kl", prob.A, SAZ)
        H = _sym(H)
        try:
            cf = sla.cho_factor(H)
        except np.linalg.LinAlgError:
            singular = True
            break

        def direction(sigma, corr_l, corr_S):
            r_l = (sigma * mu - s * z - corr_l) / s
            R_Z = _sym(sigma * mu * Sinv - Z - Sinv @ corr_S)
            rhs = G.T @ r_l + prob.adjoint(R_Z) - rd
            dx = sla.cho_solve(cf, rhs)
            ds = G @ dx
            dS = np.tensordot(dx, prob.A, axes=1)
            dz = r_l - d * ds
            dZ = R_Z - _sym(Sinv @ dS @ Z)
            return dx, ds, dS, dz, dZ

        def steps(ds, dS, dz, dZ, LZ):
            ap = min(_max_step_orthant(s, ds), _max_step_psd(LS, dS))
            ad = min(_max_step_orthant(z, dz), _max_step_psd(LZ, dZ))
            return ap, ad

        try:
            LZ = np.linalg.cholesky(Z)
        except np.linalg.LinAlgError:
            singular = True
            break

        # predictor
        dx, ds, dS, dz, dZ = direction(0.0, 0.0, np.zeros((m, m)))
        ap, ad = steps(ds, dS, dz, dZ, LZ)
        ap, ad = min(1.0, ap), min(1.0, ad)
        mu_aff = (float((s + ap * ds) @ (z + ad * dz))
                  + float(np.sum((S + ap * dS) * (Z + ad * dZ)))) / nu
        sigma = min(1.0, max(0.0, mu_aff / mu)) ** 3

        # corrector
        dx, ds, dS, dz, dZ = direction(sigma, ds * dz, dS @ dZ)
        ap, ad = steps(ds, dS, dz, dZ, LZ)
        ap = min(1.0, step_frac * ap)
        ad = min(1.0, step_frac * ad)

        x_new = x + ap * dx
        s_new = prob.lin_slack(x_new)
        S_new = prob.psd_slack(x_new)
        try:
            LS_new = np.linalg.cholesky(S_new)
        except np.linalg.LinAlgError:
            LS_new = None
        if LS_new is None or np.any(s_new <= 0):
            # roundoff pushed the recomputed slack out; halve until inside
            for _ in range(30):
                ap *= 0.5
                x_new = x + ap * dx
                s_new = prob.lin_slack(x_new)
                S_new = prob.psd_slack(x_new)
                if np.all(s_new > 0):
                    try:
                        LS_new = np.linalg.cholesky(S_new)
                        break
                    except np.linalg.LinAlgError:
                        pass
            else:
                singular = True
                break
        x, s, S, LS = x_new, s_new, S_new, LS_new
        z = z + ad * dz
        Z = _sym(Z + ad * dZ)
        if max(ap, ad) < 1e-12:
            break
    else:
        it = max_iter

    rd = c - G.T @ z - prob.adjoint(Z)
    pobj = float(c @ x)
    dobj = float(h @ z + np.sum(prob.A0 * Z))
    rd_norm = float(np.max(np.abs(rd))) if rd.size else 0.0
    # the last steps can be ill-conditioned; fall back to the best certified iterate
    if best is not None and (rd_norm > feas_tol or pobj - dobj > best[3] - best[4]):
        x, z, Z, pobj, dobj, rd_norm, _ = best
    # a singular Newton system near the optimum is normal (rank-deficient
    # solutions); only report it when the certificate is not good enough
    ok = rd_norm <= feas_tol and pobj - dobj <= accept_gap * max(1.0, abs(pobj))
    status = OPTIMAL if ok else (DEGENERATE if singular else MAX_ITER)
    return IpmResult(x=x, z=z, Z=Z, primal_value=pobj, dual_value=dobj, iterations=it,
                     status=status, dual_residual=rd_norm, history=history)
