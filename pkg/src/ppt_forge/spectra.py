"""Schmidt coefficient vectors and the scalar functionals built on them.

All logarithms are base 2.  Vectors are kept sorted non-decreasing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-9
ZERO_TOL = 1e-15
MAJORIZATION_TOL = 1e-12


@dataclass(frozen=True)
class SchmidtVector:
    """Normalized, non-negative coefficient vector stored in non-decreasing order.

    Build through :meth:`from_values` (or :func:`parse_vector`) so that the
    invariants hold; the raw constructor trusts its input.
    """

    coeffs: tuple[float, ...]

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "SchmidtVector":
        vals = np.asarray([float(v) for v in values], dtype=float)
        if vals.size == 0:
            raise ValueError("coefficient vector is empty")
        if not np.all(np.isfinite(vals)):
            raise ValueError("coefficients must be finite")
        if np.any(vals < -ZERO_TOL):
            raise ValueError(f"coefficients must be non-negative, got min {vals.min():.3g}")
        vals = np.where(vals <= ZERO_TOL, 0.0, vals)
        total = vals.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"coefficients sum to {total!r}, not 1 (tolerance {NORM_TOL:g})")
        vals = np.sort(vals / total)
        return cls(tuple(float(v) for v in vals))

    @classmethod
    def uniform(cls, k: int) -> "SchmidtVector":
        if k < 1:
            raise ValueError("uniform vector needs rank >= 1")
        return cls((1.0 / k,) * k)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    @property
    def descending(self) -> np.ndarray:
        return self.array[::-1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def rank(self) -> int:
        return sum(1 for c in self.coeffs if c > ZERO_TOL)

    def nonzero(self) -> "SchmidtVector":
        """Drop zero components (the SDP modules require a full-rank vector)."""
        return SchmidtVector(tuple(c for c in self.coeffs if c > ZERO_TOL))

    def is_uniform(self, k: int | None = None) -> bool:
        k = len(self) if k is None else k
        if len(self) != k:
            return False
        return all(c == 1.0 / k for c in self.coeffs) or bool(
            np.all(np.abs(self.array - 1.0 / k) <= ZERO_TOL)
        )

    def to_text(self) -> str:
        return ",".join(repr(c) for c in self.coeffs)


def parse_vector(text: str) -> SchmidtVector:
    """Parse ``"0.2,0.3,0.5"`` or ``"1/20,1/20,..."`` into a :class:`SchmidtVector`.

    Fractions are summed exactly before the one conversion to float.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"no coefficients in {text!r}")
    try:
        fracs = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed coefficient vector {text!r}: {exc}") from None
    total = sum(fracs)
    if total <= 0:
        raise ValueError(f"coefficients in {text!r} do not sum to a positive value")
    if abs(float(total) - 1.0) > NORM_TOL:
        raise ValueError(f"coefficients sum to {float(total)!r}, not 1")
    return SchmidtVector.from_values(float(f / total) for f in fracs)


def _as_vector(lam: SchmidtVector | Sequence[float]) -> SchmidtVector:
    return lam if isinstance(lam, SchmidtVector) else SchmidtVector.from_values(lam)


def renyi_entropy(lam: SchmidtVector | Sequence[float], t: float) -> float:
    """Rényi entropy S_t in bits, t in [0, inf]; t=0, 1, inf are exact branches."""
    lam = _as_vector(lam)
    t = float(t)
    if math.isnan(t) or t < 0:
        raise ValueError(f"Renyi order must lie in [0, inf], got {t}")
    p = lam.array[lam.array > ZERO_TOL]
    if t == 0:
        return math.log2(p.size)
    if t == 1:
        return float(-np.sum(p * np.log2(p)))
    if math.isinf(t):
        return -math.log2(p.max())
    return _log2_power_sum(p, t) / (1.0 - t)


def _log2_power_sum(p: np.ndarray, t: float) -> float:
    # log2 Σ p^t written as log1p(Σ p (p^(t-1) - 1)); stays accurate for t near 1
    excess = float(np.sum(p * np.expm1((t - 1.0) * np.log(p))))
    return math.log1p(excess) / math.log(2.0)


def s_half_power(lam: SchmidtVector | Sequence[float]) -> float:
    """2**S_{1/2}(λ) = (Σ sqrt λ_i)^2, evaluated directly."""
    lam = _as_vector(lam)
    return float(np.sum(np.sqrt(lam.array))) ** 2


def f_value(lam: SchmidtVector | Sequence[float], t: float) -> float:
    """The f_t functional of the LOCC catalysis criterion; -inf when a component vanishes."""
    lam = _as_vector(lam)
    p = lam.array
    if np.any(p <= ZERO_TOL):
        return -math.inf
    if t == 0:
        return float(np.sum(np.log2(p)))
    return _log2_power_sum(p, float(t)) / (float(t) - 1.0)


def _padded(a: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([a, np.zeros(n - a.size)])


def majorizes(lam: SchmidtVector | Sequence[float], mu: SchmidtVector | Sequence[float]) -> bool:
    """True iff λ ≺ μ, i.e. the state with coefficients λ converts to μ by LOCC."""
    lam, mu = _as_vector(lam), _as_vector(mu)
    n = max(len(lam), len(mu))
    a = np.cumsum(_padded(lam.descending, n))
    b = np.cumsum(_padded(mu.descending, n))
    return bool(np.all(a <= b + MAJORIZATION_TOL))


@dataclass(frozen=True)
class MonotoneReport:
    E_c: float
    E_d: float
    E_xd: float
    E_xc: float

    def as_dict(self) -> dict[str, float]:
        return {"E_c": self.E_c, "E_d": self.E_d, "E_xd": self.E_xd, "E_xc": self.E_xc}


def ppt_monotone_report(lam: SchmidtVector | Sequence[float]) -> MonotoneReport:
    """PPT cost/distillation monotones of a pure state, in ebits."""
    s1 = renyi_entropy(lam, 1)
    return MonotoneReport(E_c=s1, E_d=s1, E_xd=renyi_entropy(lam, math.inf),
                          E_xc=renyi_entropy(lam, 0.5))


def tensor(lam: SchmidtVector | Sequence[float], xi: SchmidtVector | Sequence[float]) -> SchmidtVector:
    lam, xi = _as_vector(lam), _as_vector(xi)
    prod = np.outer(lam.array, xi.array).ravel()
    return SchmidtVector(tuple(float(v) for v in np.sort(prod)))
