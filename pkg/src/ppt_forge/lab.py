"""Experiment harness: T versus T₁ sweeps and the rank-3 reachability regions.

Region convention: points live on the ordered cell λ₁ ≤ λ₂ ≤ λ₃ of the
probability simplex, i.e. the triangle with corners (0,0,1) (product state),
(0,½,½) (one EPR pair) and (⅓,⅓,⅓).  A grid of resolution r has r points per
edge, r(r+1)/2 in total.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import closed_form, ppt_sdp
from .feasibility import SDP_GUARD_DIM, rank3_lhs
from .spectra import SchmidtVector, s_half_power

GAP_FLAG = 1e-5
LOWER_BOUND_SLACK = 1e-7
REGION_TOL = 1e-12  # grid points on the region boundaries carry roundoff

DIRECT = "DirectPPT"
CATALYTIC_ONLY = "CatalyticOnly"
UNREACHABLE = "Unreachable"
CLASSES = (DIRECT, CATALYTIC_ONLY, UNREACHABLE)

CELL = np.array([[0.0, 0.0, 1.0], [0.0, 0.5, 0.5], [1 / 3, 1 / 3, 1 / 3]])


def sample_simplex(rng: np.random.Generator, d: int) -> SchmidtVector:
    """Uniform point on the (d-1)-simplex from normalized exponentials, sorted."""
    e = rng.exponential(size=d)
    return SchmidtVector.from_values(e / e.sum())


# --- T versus T1 sweep ------------------------------------------------------------

@dataclass(frozen=True)
class SweepRecord:
    index: int
    seed: int
    d: int
    K: int
    lam: tuple[float, ...]
    T1: float
    T: float
    gap: float
    status: str

    @property
    def flagged(self) -> bool:
        return self.gap > GAP_FLAG

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["lambda"] = list(doc.pop("lam"))
        return doc


@dataclass
class SweepSummary:
    n: int
    max_gap: float
    min_gap: float
    flagged: list
    violations: list  # records with T1 > T + slack; T1 is a proven lower bound

    def to_json(self) -> dict:
        return {"n": self.n, "max_gap": self.max_gap, "min_gap": self.min_gap,
                "flagged": [r.to_json() for r in self.flagged],
                "violations": [r.to_json() for r in self.violations]}


def _sweep_one(args) -> SweepRecord:
    index, seed, child, d_range, K_range = args
    rng = np.random.default_rng(child)
    d = int(rng.choice(d_range))
    K = int(rng.choice(K_range))
    lam = sample_simplex(rng, d)
    cert = ppt_sdp.solve(ppt_sdp.build_reduced(lam, K))
    t1 = closed_form.t1_value(lam, K)
    return SweepRecord(index=index, seed=seed, d=d, K=K, lam=lam.coeffs, T1=t1,
                       T=cert.T, gap=cert.T - t1, status=cert.status)


def conjecture_sweep(n: int, d_range: Sequence[int] = range(3, 7),
                     K_range: Sequence[int] = range(2, 7), seed: int = 0,
                     jobs: int = 1) -> tuple[list[SweepRecord], SweepSummary]:
    d_range, K_range = list(d_range), list(K_range)
    if n < 0:
        raise ValueError("instance count must be non-negative")
    if not d_range or not K_range:
        raise ValueError("empty d or K range")
    if max(d_range) > SDP_GUARD_DIM:
        raise ValueError(f"d up to {max(d_range)} exceeds the solver guard {SDP_GUARD_DIM}")
    if min(d_range) < 1 or min(K_range) < 2:
        raise ValueError("need d >= 1 and K >= 2")
    children = np.random.SeedSequence(seed).spawn(n)
    tasks = [(i, seed, c, d_range, K_range) for i, c in enumerate(children)]
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_sweep_one, tasks, chunksize=max(1, n // (4 * jobs))))
    else:
        records = [_sweep_one(t) for t in tasks]
    gaps = [r.gap for r in records]
    summary = SweepSummary(
        n=n, max_gap=max(gaps, default=0.0), min_gap=min(gaps, default=0.0),
        flagged=[r for r in records if r.flagged],
        violations=[r for r in records if r.T1 > r.T + LOWER_BOUND_SLACK])
    return records, summary


SWEEP_COLUMNS = ("index", "seed", "d", "K", "lambda", "T1", "T", "gap", "status")


def emit_sweep_csv(records: Sequence[SweepRecord], path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(SWEEP_COLUMNS)
            for r in records:
                w.writerow([r.index, r.seed, r.d, r.K, " ".join(repr(x) for x in r.lam),
                            repr(r.T1), repr(r.T), repr(r.gap), r.status])
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc
    return path


def emit_sweep_summary(summary: SweepSummary, path) -> Path:
    path = Path(path)
    try:
        path.write_text(json.dumps(summary.to_json(), indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write sweep summary to {path}: {exc}") from exc
    return path


# --- Rank-3 regions ---------------------------------------------------------------

@dataclass(frozen=True)
class RegionSample:
    lam: tuple[float, float, float]
    klass: str
    thm5_lhs: float
    s_half_pow: float

    @property
    def catalytic_lhs(self) -> float:
        # 2(√(λ₃λ₂) + √(λ₃λ₁) + √(λ₁λ₂)) = 2^{S½} - 1
        return self.s_half_pow - 1.0


def cell_grid(resolution: int) -> list[np.ndarray]:
    if int(resolution) != resolution or resolution < 2:
        raise ValueError(f"resolution must be an integer >= 2, got {resolution}")
    r = int(resolution) - 1
    A, B, C = CELL
    pts = []
    for i in range(r + 1):
        for j in range(r + 1 - i):
            p = A + (i / r) * (B - A) + (j / r) * (C - A)
            pts.append(np.sort(np.clip(p, 0.0, None)))
    return pts


def classify(lam: SchmidtVector, mode: str = "Catalytic") -> RegionSample:
    direct = rank3_lhs(lam)
    X = s_half_power(lam)
    if direct <= 1.0 + REGION_TOL:
        klass = DIRECT
    elif mode == "Catalytic" and X - 1.0 <= 1.0 + REGION_TOL:
        klass = CATALYTIC_ONLY
    else:
        klass = UNREACHABLE
    return RegionSample(lam=tuple(lam.coeffs), klass=klass, thm5_lhs=direct, s_half_pow=X)


def region_sample(resolution: int, mode: str = "Catalytic") -> list[RegionSample]:
    """Classify the cell grid.

    ``Catalytic`` distinguishes all three classes; ``Direct`` only tests the
    catalyst-free criterion, so every point is DirectPPT or Unreachable.
    """
    if mode not in ("Direct", "Catalytic"):
        raise ValueError(f"mode must be Direct or Catalytic, got {mode!r}")
    return [classify(SchmidtVector.from_values(p), mode) for p in cell_grid(resolution)]


def region_counts(samples: Sequence[RegionSample]) -> dict[str, int]:
    counts = {k: 0 for k in CLASSES}
    for s in samples:
        counts[s.klass] += 1
    return counts


REGION_COLUMNS = ("l1", "l2", "l3", "class", "thm5_lhs", "s_half_pow")


def emit_region_csv(samples: Sequence[RegionSample], path) -> Path:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REGION_COLUMNS)
            for s in samples:
                w.writerow([*(repr(x) for x in s.lam), s.klass, repr(s.thm5_lhs),
                            repr(s.s_half_pow)])
    except OSError as exc:
        raise OSError(f"cannot write region CSV to {path}: {exc}") from exc
    return path


_FILL = {DIRECT: "#2b6cb0", CATALYTIC_ONLY: "#90cdf4", UNREACHABLE: "#edf2f7"}
_SIZE = 480
_PAD = 40


def _project(p) -> tuple[float, float]:
    # affine map of the cell corners onto an upright triangle
    w = _SIZE - 2 * _PAD
    corners = np.array([[_PAD, _SIZE - _PAD], [_PAD + w, _SIZE - _PAD],
                        [_PAD + w / 2, _SIZE - _PAD - w * math.sqrt(3) / 2]])
    # barycentric weights of p with respect to CELL
    M = np.vstack([CELL.T, np.ones(3)])
    bary = np.linalg.lstsq(M, np.append(np.asarray(p, float), 1.0), rcond=None)[0]
    x, y = bary @ corners
    return float(x), float(y)


def region_svg(samples: Sequence[RegionSample]) -> str:
    n = len(samples)
    res = int(round((math.sqrt(8 * n + 1) - 1) / 2))
    r = max(3.0, (_SIZE - 2 * _PAD) / max(res - 1, 1) / 1.6)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
           f'viewBox="0 0 {_SIZE} {_SIZE}">',
           f'<rect width="{_SIZE}" height="{_SIZE}" fill="white"/>']
    for s in samples:
        x, y = _project(s.lam)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{_FILL[s.klass]}"/>')
    tri = [_project(c) for c in CELL]
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in tri)
    out.append(f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
    labels = ("(0,0,1)", "(0,1/2,1/2)", "(1/3,1/3,1/3)")
    offsets = ((-10, 20), (-40, 20), (-40, -10))
    for (x, y), text, (dx, dy) in zip(tri, labels, offsets):
        out.append(f'<text x="{x + dx:.2f}" y="{y + dy:.2f}" font-family="sans-serif" '
                   f'font-size="12">{text}</text>')
    for k, klass in enumerate(CLASSES):
        y = 20 + 18 * k
        out.append(f'<rect x="{_SIZE - 150}" y="{y - 10}" width="12" height="12" '
                   f'fill="{_FILL[klass]}" stroke="black" stroke-width="0.5"/>')
        out.append(f'<text x="{_SIZE - 132}" y="{y}" font-family="sans-serif" '
                   f'font-size="12">{klass}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_region_svg(samples: Sequence[RegionSample], path) -> Path:
    path = Path(path)
    try:
        path.write_text(region_svg(samples))
    except OSError as exc:
        raise OSError(f"cannot write region SVG to {path}: {exc}") from exc
    return path
