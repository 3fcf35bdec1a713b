"""Self-similar set attached to an injective, non-surjective function table.

Each attained residue ``a`` is the closed box ``[a/A, (a+1)/A]``. Two boxes
meet exactly when their residues are consecutive, so the components of the
intersection graph are maximal runs of consecutive residues. A run of
``b`` boxes becomes one similitude with ratio ``b/A``, and the similarity
dimension is the root ``t`` of ``sum (b/A)^t = 1``.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .config import Caps, get_caps
from .errors import (
    DegenerateSingleFullComponent,
    NoBoundaryGap,
    NotInjective,
    OutputTooLarge,
    Surjective,
    ValidationError,
)
from .instance import Instance
from .multiplicity import multiplicity_dp

log = logging.getLogger(__name__)

MODES = ("strict", "lenient")
MAX_ITERATIONS = 200
RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class ImageSet:
    """Attained residues, written in the residue system ``c_min .. c_min + A - 1``.

    ``boundary_warning`` is set when only one end of the residue system is
    unoccupied (accepted in lenient mode only).
    """

    modulus: int
    residues: tuple[int, ...]
    c_min: int
    boundary_warning: bool = False

    @property
    def c_max(self) -> int:
        return self.c_min + self.modulus - 1

    @property
    def canonical(self) -> tuple[int, ...]:
        return tuple(sorted(r % self.modulus for r in self.residues))


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return sum(size for _, size in self.components)

    @property
    def n_prime(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class DimensionReport:
    t: float
    lower: float
    upper: float
    residual: float
    iterations: int
    components: tuple[tuple[int, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            "t": _rounded(self.t),
            "lower": _rounded(self.lower),
            "upper": _rounded(self.upper),
            "residual": _rounded(self.residual),
            "iterations": self.iterations,
            "components": [list(c) for c in self.components],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _rounded(x: float) -> float:
    return float(f"{x:.15g}")


def _anchor(occupied: set[int], modulus: int, mode: str) -> tuple[int, bool]:
    # strict: c_min and c_max = c_min - 1 (mod A) both unoccupied
    for c in range(modulus):
        if c not in occupied and (c - 1) % modulus not in occupied:
            return c, False
    if mode == "strict":
        raise NoBoundaryGap("no two consecutive residues are missing, so no residue system has both ends free")
    for c in range(modulus):
        if c not in occupied or (c - 1) % modulus not in occupied:
            log.warning("only one end of the residue system anchored at %d is unoccupied", c)
            return c, True
    raise Surjective("every residue is attained")  # unreachable for non-surjective input


def image_set_explicit(residues: Iterable[int], modulus: int, mode: str = "strict") -> ImageSet:
    """Anchor an arbitrary set of residues; the smallest admissible ``c_min`` wins."""
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}")
    if modulus < 2:
        raise ValidationError("modulus must be at least 2")
    occupied = {int(r) % modulus for r in residues}
    if not occupied:
        raise ValidationError("image set is empty")
    if len(occupied) == modulus:
        raise Surjective("every residue is attained")
    c_min, warned = _anchor(occupied, modulus, mode)
    shifted = sorted(r if r >= c_min else r + modulus for r in occupied)
    return ImageSet(modulus, tuple(shifted), c_min, warned)


def image_set(inst: Instance, mode: str = "strict", caps: Caps | None = None) -> ImageSet:
    mv = multiplicity_dp(inst, caps)
    if mv.max_count > 1:
        raise NotInjective(f"some residue has {mv.max_count} preimages")
    return image_set_explicit(mv.support.tolist(), inst.modulus, mode)


def components(img: ImageSet) -> ComponentDecomposition:
    runs: list[list[int]] = []
    for r in img.residues:
        if runs and r == runs[-1][0] + runs[-1][1]:
            runs[-1][1] += 1
        else:
            runs.append([r, 1])
    return ComponentDecomposition(tuple((start, size) for start, size in runs))


def _moran(ratios: list[float], t: float) -> float:
    return math.fsum(r**t for r in ratios) - 1.0


def similarity_dimension(dec: ComponentDecomposition, modulus: int) -> DimensionReport:
    """Solve the Moran equation by bisection and bracket the root.

    ``f(t) = sum (b/A)^t - 1`` is strictly decreasing with ``f(0) = n' - 1``
    and ``f(log n / log A) <= 0``, so ``[0, log n / log A + 1]`` always
    brackets the root. The result satisfies ``log n'/log A <= t <= log n/log A``.
    """
    if not dec.components:
        raise ValidationError("no components")
    if any(size >= modulus for _, size in dec.components):
        raise DegenerateSingleFullComponent("a component covering all residues leaves no contraction")
    log_a = math.log(modulus)
    lower = math.log(dec.n_prime) / log_a
    upper = math.log(dec.n) / log_a
    ratios = [size / modulus for _, size in dec.components]

    lo, hi = 0.0, upper + 1.0
    iterations = 0
    if _moran(ratios, lo) <= 0:
        hi = lo
    while iterations < MAX_ITERATIONS and hi > lo:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        iterations += 1
        value = _moran(ratios, mid)
        if value > 0:
            lo = mid
        elif value < 0:
            hi = mid
        else:
            lo = hi = mid
    t = lo if abs(_moran(ratios, lo)) <= abs(_moran(ratios, hi)) else hi
    residual = abs(_moran(ratios, t))
    if residual > RESIDUAL_TOL:
        raise ArithmeticError(f"Moran residual {residual:.3g} above {RESIDUAL_TOL}")
    # last-ulp slack: t equals a bound exactly when all runs share one length
    slack = 1e-12
    if not lower - slack <= t <= upper + slack:
        raise ArithmeticError(f"t={t} outside [{lower}, {upper}]")
    return DimensionReport(t, lower, upper, residual, iterations, dec.components)


def attractor_digits(img: ImageSet, depth: int, caps: Caps | None = None) -> list[str]:
    """Every length-``depth`` base-``A`` digit string over the attained residues.

    Each string is the leading digits of points of the attractor. Digits are
    written in decimal and joined with ``.`` when ``A > 10``.
    """
    caps = get_caps(caps)
    if depth < 1:
        raise ValidationError("depth must be positive")
    alphabet = img.canonical
    if depth > caps.depth or len(alphabet) ** depth > caps.output:
        raise OutputTooLarge(f"{len(alphabet)}^{depth} strings exceed the output cap {caps.output}")
    sep = "" if img.modulus <= 10 else "."
    return [sep.join(map(str, word)) for word in itertools.product(alphabet, repeat=depth)]
