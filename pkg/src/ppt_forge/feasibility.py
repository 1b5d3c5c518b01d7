"""Decide Φ_K → ρ_λ (PPT) or ρ_λ → ρ_μ (LOCC) and say which rule settled it."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from . import closed_form, ppt_sdp
from .spectra import SchmidtVector, majorizes, renyi_entropy, s_half_power

FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"
BOUNDARY = "Boundary"

BOUNDARY_TOL = 1e-6
ENTROPY_TOL = 1e-9
SDP_GUARD_DIM = 24

RULES = ("Nielsen", "RankFastPath", "MonotoneS12", "Borderline", "Rank3Exact",
         "CstarD", "SdpT", "T1LowerBound")


class UnsupportedQuery(ValueError):
    pass


class SolverGuardError(ValueError):
    """The reduced SDP would exceed the dense solver's dimension limit."""


@dataclass(frozen=True)
class MaxEnt:
    K: int

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 2:
            raise ValueError(f"maximally entangled source needs K >= 2, got {self.K}")

    @property
    def vector(self) -> SchmidtVector:
        return SchmidtVector.uniform(self.K)


@dataclass(frozen=True)
class TransformQuery:
    source: Union[MaxEnt, SchmidtVector]
    target: SchmidtVector
    op_class: str = "PPT"

    def __post_init__(self):
        if self.op_class not in ("LOCC", "PPT"):
            raise ValueError(f"op_class must be LOCC or PPT, got {self.op_class!r}")


@dataclass
class Verdict:
    decision: str
    rule: str
    T: Optional[float] = None
    certificate: Optional[ppt_sdp.SdpCertificate] = None
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        doc = {"decision": self.decision, "rule": self.rule, "T": self.T}
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        return doc


def _compare_T(T: float) -> str:
    if abs(T - 1.0) <= BOUNDARY_TOL:
        return BOUNDARY
    return FEASIBLE if T < 1.0 else INFEASIBLE


def rank3_lhs(lam: SchmidtVector) -> float:
    """Left side of the exact rank-3 criterion from an EPR pair (≤ 1 iff reachable)."""
    l1, l2, l3 = lam.nonzero().coeffs if lam.rank() == 3 else _pad3(lam)
    return 2 * (math.sqrt(l3 * l2) + math.sqrt(l3 * l1)) + 4 * math.sqrt(l1 * l2)


def _pad3(lam: SchmidtVector):
    c = list(lam.coeffs)
    if len(c) > 3:
        raise ValueError("rank-3 criterion needs at most three components")
    return [0.0] * (3 - len(c)) + c


def _sdp_verdict(lam: SchmidtVector, K: int, trace: list, max_dim: int) -> Verdict:
    if len(lam) > max_dim:
        raise SolverGuardError(f"SDP dimension {len(lam)} exceeds solver guard {max_dim}")
    cert = ppt_sdp.solve(ppt_sdp.build_reduced(lam, K))
    T = cert.primal_value
    if abs(T - 1.0) <= BOUNDARY_TOL:
        decision = BOUNDARY
    elif T < 1.0:
        decision = FEASIBLE  # the primal point itself certifies T < 1
    elif cert.dual_value > 1.0:
        decision = INFEASIBLE  # dual value is a certified lower bound
    else:
        decision = BOUNDARY
    trace.append(("SdpT", f"SDP primal {T:.10g}, dual {cert.dual_value:.10g}, "
                          f"gap {cert.gap:.3g}, status {cert.status}, {cert.iterations} iterations"))
    return Verdict(decision, "SdpT", T=T, certificate=cert, trace=trace)


def _decide_ppt(K: int, target: SchmidtVector, max_dim: int) -> Verdict:
    lam = target.nonzero()
    d = len(lam)
    trace = []
    if d <= K:
        trace.append(("RankFastPath", f"Schmidt rank {d} <= K = {K}: reachable by LOCC alone"))
        return Verdict(FEASIBLE, "RankFastPath", trace=trace)
    trace.append(("RankFastPath", f"Schmidt rank {d} > K = {K}: not decisive"))

    s12, logK = renyi_entropy(lam, 0.5), math.log2(K)
    if s12 > logK + ENTROPY_TOL:
        trace.append(("MonotoneS12", f"S_1/2 = {s12:.10g} > log K = {logK:.10g}"))
        return Verdict(INFEASIBLE, "MonotoneS12", trace=trace)
    if abs(s12 - logK) <= ENTROPY_TOL:
        uniform = lam.is_uniform(K)
        trace.append(("Borderline", f"S_1/2 = {s12:.10g} equals log K = {logK:.10g}; "
                                    f"target {'is' if uniform else 'is not'} U_{K}"))
        return Verdict(FEASIBLE if uniform else INFEASIBLE, "Borderline", trace=trace)
    trace.append(("MonotoneS12", f"S_1/2 = {s12:.10g} < log K = {logK:.10g}: not decisive"))

    if K == 2 and d == 3:
        lhs = rank3_lhs(lam)
        T = closed_form.t1_value(lam, K)
        trace.append(("Rank3Exact", f"rank-3 criterion value {lhs:.10g} (reachable iff <= 1); "
                                    f"T = T1 = {T:.10g}"))
        if abs(T - 1.0) <= BOUNDARY_TOL:
            decision = BOUNDARY
        else:
            decision = FEASIBLE if lhs <= 1.0 else INFEASIBLE
        return Verdict(decision, "Rank3Exact", T=T, trace=trace)

    c = closed_form.c_star(lam, K)
    if c == d:
        T = (s_half_power(lam) - 1) / (K - 1)
        trace.append(("CstarD", f"c* = d = {d}: T = (2^S_1/2 - 1)/(K - 1) = {T:.10g}"))
        return Verdict(_compare_T(T), "CstarD", T=T, trace=trace)
    t1 = closed_form.t1_value(lam, K)
    if t1 > 1.0 + BOUNDARY_TOL:
        trace.append(("T1LowerBound", f"c* = {c}: T1 = {t1:.10g} > 1 and T >= T1"))
        return Verdict(INFEASIBLE, "T1LowerBound", trace=trace)
    trace.append(("T1LowerBound", f"c* = {c}: T1 = {t1:.10g} <= 1: not decisive"))
    return _sdp_verdict(lam, K, trace, max_dim)


def decide(query: TransformQuery, max_sdp_dim: int = SDP_GUARD_DIM) -> Verdict:
    src, target = query.source, query.target
    if query.op_class == "LOCC":
        vec = src.vector if isinstance(src, MaxEnt) else src
        ok = majorizes(vec, target)
        trace = [("Nielsen", "source is majorized by target" if ok
                  else "a prefix sum of the source exceeds the target's")]
        return Verdict(FEASIBLE if ok else INFEASIBLE, "Nielsen", trace=trace)
    if not isinstance(src, MaxEnt):
        nz = src.nonzero()
        if len(nz) >= 2 and nz.is_uniform():
            src = MaxEnt(len(nz))
        else:
            raise UnsupportedQuery(
                "PPT convertibility from a non-maximally-entangled pure source is not "
                "decided here; exact criteria are only known for maximally entangled "
                "sources (the general catalytic case is an open conjecture)")
    return _decide_ppt(src.K, target, max_sdp_dim)


def evaluate_rules(K: int, target: SchmidtVector) -> dict[str, str]:
    """Every PPT rule that applies, each evaluated on its own (consistency checks)."""
    lam = target.nonzero()
    d = len(lam)
    out = {}
    if d <= K:
        out["RankFastPath"] = FEASIBLE
    s12, logK = renyi_entropy(lam, 0.5), math.log2(K)
    if s12 > logK + ENTROPY_TOL:
        out["MonotoneS12"] = INFEASIBLE
    elif abs(s12 - logK) <= ENTROPY_TOL and d >= K:
        out["Borderline"] = FEASIBLE if lam.is_uniform(K) else INFEASIBLE
    if K == 2 and d == 3:
        out["Rank3Exact"] = FEASIBLE if rank3_lhs(lam) <= 1.0 else INFEASIBLE
    if d > K and closed_form.c_star(lam, K) == d:
        out["CstarD"] = _compare_T((s_half_power(lam) - 1) / (K - 1))
    t1 = closed_form.t1_value(lam, K)
    if t1 > 1.0 + BOUNDARY_TOL:
        out["T1LowerBound"] = INFEASIBLE
    out["SdpT"] = _sdp_verdict(lam, K, [], SDP_GUARD_DIM).decision
    return out


def explain(verdict: Verdict) -> str:
    lines = [f"decision: {verdict.decision} (rule {verdict.rule})"]
    if verdict.T is not None:
        lines.append(f"T = {verdict.T:.10g}")
    for rule, msg in verdict.trace:
        lines.append(f"  [{rule}] {msg}")
    if verdict.certificate is not None:
        c = verdict.certificate
        lines.append(f"  certificate: primal {c.primal_value:.12g}, dual {c.dual_value:.12g}, "
                     f"gap {c.gap:.3g}")
    if verdict.rule == "RankFastPath":
        lines.append("  LOCC suffices: any state of Schmidt rank <= K is reachable from Phi_K")
    return "\n".join(lines)


def monotone_check(K: int, target: SchmidtVector) -> bool:
    """S_1/2, S_1 and S_inf of the target do not exceed log K."""
    logK = math.log2(K)
    return all(renyi_entropy(target, t) <= logK + ENTROPY_TOL for t in (0.5, 1.0, math.inf))


__all__ = ["MaxEnt", "TransformQuery", "Verdict", "decide", "explain", "evaluate_rules",
           "monotone_check", "rank3_lhs", "UnsupportedQuery", "SolverGuardError",
           "FEASIBLE", "INFEASIBLE", "BOUNDARY", "RULES"]
