"""Combinatorial q-fractal dimensions of the preimage distribution.

With ``P(c) = m_c / 2^s`` on the support, the dimension at a finite
``q != 1`` is ``log(sum P^q) / ((1 - q) log A)``, i.e. a Rényi entropy
normalised by the box scale ``1/A``. Everything is evaluated in the log
domain from exact integer counts; probabilities are never formed directly.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import Caps
from .errors import CapExceeded, DegenerateDenominator, DegenerateModulus, ValidationError
from .instance import Instance, InstanceFamily
from .multiplicity import MultiplicityVector, multiplicity_dp, multiplicity_histogram

log = logging.getLogger(__name__)

# grid values this close to 1 are evaluated with the entropy formula
Q_SNAP = 1e-9
METHODS = ("last-sample", "linear-extrapolation-in-1/s")


def format_q(q: float) -> str:
    if math.isinf(q):
        return "+inf" if q > 0 else "-inf"
    return f"{q:.15g}"


def format_real(x: float) -> str:
    """15 significant digits; integral values keep a trailing ``.0``."""
    text = f"{x:.15g}"
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def parse_q(text: str) -> float:
    token = text.strip().lower()
    if token in ("-inf", "-infinity"):
        return -math.inf
    if token in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    try:
        value = float(token)
    except ValueError:
        raise ValidationError(f"not a q value: {text!r}") from None
    if math.isnan(value):
        raise ValidationError("q may not be NaN")
    return value


def _log2_probabilities(mv: MultiplicityVector) -> np.ndarray:
    """``log2 P(c)`` over the support, from the exact counts."""
    if mv.modulus < 2:
        raise DegenerateModulus("modulus must be at least 2")
    counts = mv.support_values()
    if not len(counts):
        raise ValidationError("empty support")
    if counts.dtype == object:
        # math.log2 is exact-rounded for Python ints of any size
        return np.array([math.log2(m) for m in counts]) - mv.s
    return np.log2(counts.astype(np.float64)) - mv.s


def _log2_sum_exp2(x: np.ndarray) -> float:
    # shift by the max so every term is <= 1; in base 2 this is exact for
    # dyadic probabilities, which keeps uniform spectra at exactly log n / log A
    top = float(x.max())
    return top + math.log2(float(np.exp2(x - top).sum()))


def dimension_q(mv: MultiplicityVector, q: float) -> float:
    if q == 1:
        raise ValidationError("q = 1 is the information dimension; use dimension_info")
    if math.isinf(q):
        raise ValidationError("infinite q; use dimension_extremes")
    return _log2_sum_exp2(q * _log2_probabilities(mv)) / ((1 - q) * math.log2(mv.modulus))


def dimension_info(mv: MultiplicityVector) -> float:
    lp = _log2_probabilities(mv)
    p = np.exp2(lp)
    return float(-math.fsum(p * lp)) / math.log2(mv.modulus)


def dimension_extremes(mv: MultiplicityVector) -> tuple[float, float]:
    """``(D_{-inf}, D_{+inf})``: the rarest and the most crowded residue.

    With a minimum count of 1, ``D_{-inf}`` is ``s / log2 A``, the density.
    """
    if mv.modulus < 2:
        raise DegenerateModulus("modulus must be at least 2")
    log2_a = math.log2(mv.modulus)
    lo = (mv.s - math.log2(mv.min_count)) / log2_a
    hi = (mv.s - math.log2(mv.max_count)) / log2_a
    return lo, hi


def dimension_at(mv: MultiplicityVector, q: float) -> float:
    """Dispatch on ``q``: extremes at infinity, entropy at 1, Rényi elsewhere."""
    if math.isinf(q):
        lo, hi = dimension_extremes(mv)
        return lo if q < 0 else hi
    if abs(q - 1) <= Q_SNAP:
        return dimension_info(mv)
    return dimension_q(mv, q)


@dataclass(frozen=True)
class SpectrumPoint:
    q: float
    value: float


@dataclass(frozen=True)
class Spectrum:
    points: tuple[SpectrumPoint, ...]
    d_minus_inf: float
    d_plus_inf: float
    instance: Instance | None = field(default=None, compare=False)

    @property
    def qs(self) -> list[float]:
        return [p.q for p in self.points]

    @property
    def values(self) -> list[float]:
        return [p.value for p in self.points]

    def is_monotone(self, tol: float = 1e-9) -> bool:
        vals = self.values
        inner = all(b <= a + tol for a, b in zip(vals, vals[1:]))
        outer = all(self.d_plus_inf - tol <= v <= self.d_minus_inf + tol for v in vals)
        return inner and outer

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "D_q"])
        writer.writerows((format_q(p.q), format_real(p.value)) for p in self.points)
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "points": [{"q": format_q(p.q), "D_q": _rounded(p.value)} for p in self.points],
            "D_-inf": _rounded(self.d_minus_inf),
            "D_+inf": _rounded(self.d_plus_inf),
        }


def _rounded(x: float) -> float:
    return float(f"{x:.15g}")


def spectrum(mv: MultiplicityVector, q_grid: Iterable[float], instance: Instance | None = None) -> Spectrum:
    grid = [1.0 if abs(q - 1) <= Q_SNAP else float(q) for q in q_grid]
    if not grid:
        raise ValidationError("q grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValidationError("q grid must be sorted ascending")
    lo, hi = dimension_extremes(mv)
    points = tuple(SpectrumPoint(q, dimension_at(mv, q)) for q in grid)
    return Spectrum(points, lo, hi, instance)


@dataclass(frozen=True)
class SingularityEntry:
    l: int
    alpha: float
    count: int


def singularity_strengths(mv: MultiplicityVector) -> list[SingularityEntry]:
    """``alpha_l = -log(l / 2^s) / log A`` for every multiplicity ``l`` that occurs."""
    log2_a = math.log2(mv.modulus)
    hist = multiplicity_histogram(mv)
    return [SingularityEntry(l, (mv.s - math.log2(l)) / log2_a, n) for l, n in sorted(hist.entries.items())]


def singularity_csv(entries: Sequence[SingularityEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["l", "alpha", "N_l"])
    writer.writerows((e.l, format_real(e.alpha), e.count) for e in entries)
    return buf.getvalue()


@dataclass(frozen=True)
class FamilyDimensionEstimate:
    q: float
    samples: tuple[tuple[int, float], ...]
    estimate: float
    method: str
    skipped: tuple[tuple[int, str], ...] = ()
    residuals: tuple[float, ...] = ()

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["s", "q", "D_q"])
        writer.writerows((s, format_q(self.q), format_real(v)) for s, v in self.samples)
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "q": format_q(self.q),
            "method": self.method,
            "estimate": _rounded(self.estimate),
            "samples": [[s, _rounded(v)] for s, v in self.samples],
            "skipped": [{"s": s, "reason": r} for s, r in self.skipped],
            "residuals": [_rounded(r) for r in self.residuals],
        }


def family_dimension(
    family: InstanceFamily,
    q: float,
    method: str = "last-sample",
    caps: Caps | None = None,
) -> FamilyDimensionEstimate:
    """Sample ``D_q`` along a family and estimate its limit.

    ``last-sample`` reports the value at the largest index;
    ``linear-extrapolation-in-1/s`` fits ``D_q ~ d + k/s`` by least squares and
    reports the intercept with the fit residuals. Members that exceed a cap
    are skipped and listed in ``skipped``. Convergence is never asserted.
    """
    if method not in METHODS:
        raise ValidationError(f"unknown estimator {method!r}; choose from {METHODS}")
    samples, skipped = [], []
    for index, member in family:
        try:
            mv = multiplicity_dp(member, caps)
        except CapExceeded as exc:
            log.warning("skipping family member %d: %s", index, exc)
            skipped.append((index, str(exc)))
            continue
        samples.append((index, dimension_at(mv, q)))
    if len(samples) < 2:
        raise ValidationError("family needs at least two computable members")
    values = np.array([v for _, v in samples])
    if method == "last-sample":
        return FamilyDimensionEstimate(q, tuple(samples), float(values[-1]), method, tuple(skipped))
    inv = 1.0 / np.array([s for s, _ in samples], dtype=float)
    slope, intercept = np.polyfit(inv, values, 1)
    residuals = values - (intercept + slope * inv)
    return FamilyDimensionEstimate(
        q, tuple(samples), float(intercept), method, tuple(skipped), tuple(float(r) for r in residuals)
    )


def nonmodular_density(inst: Instance) -> float:
    """``s / log2(s * max a)``, the box scale of the integer-valued subset sum."""
    scale = inst.s * max(inst.weights)
    if scale <= 1:
        raise DegenerateDenominator("s * max(a) = 1 gives a zero denominator")
    return inst.s / math.log2(scale)
