"""Weak partitions, collisions and the lower bound on the image size.

A weak partition solution is a nonzero ``y in {-1,0,1}^s`` with
``sum(y_i a_i) = 0 (mod A)``, normalised so that its first nonzero entry is
``+1``. Index sets (``S_plus``, ``T1`` ...) are 1-based, matching
``U = {1, ..., s}``; 0/1 and signed vectors are plain tuples.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .config import Caps, get_caps
from .errors import (
    HypothesisViolated,
    InstanceTooLarge,
    ModulusTooLarge,
    NotACollision,
    SetsNotFree,
    SolutionInstanceMismatch,
    ValidationError,
)
from .instance import Instance
from .multiplicity import (
    KERNEL_MAX_MODULUS,
    CollisionClass,
    multiplicity_dp,
    subset_residues,
)

# 4^s must fit int64 for the compiled signed convolution
_SIGNED_INT64_MAX_S = 31

_DIGITS = {1: "+", 0: "0", -1: "-"}
_FROM_DIGIT = {"+": 1, "0": 0, "-": -1, "−": -1}


def canonicalize(y: Sequence[int]) -> tuple[int, ...]:
    """Flip the sign of ``y`` if needed so its leading nonzero entry is +1."""
    y = tuple(int(v) for v in y)
    for v in y:
        if v:
            return y if v > 0 else tuple(-u for u in y)
    raise ValidationError("the zero vector is not a weak partition solution")


@dataclass(frozen=True)
class WeakPartitionSolution:
    y: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (-1, 0, 1) for v in self.y):
            raise ValidationError(f"entries must lie in {{-1, 0, 1}}: {self.y}")
        if canonicalize(self.y) != self.y:
            raise ValidationError(f"leading nonzero entry must be +1: {self.y}")

    @classmethod
    def from_vector(cls, y: Sequence[int]) -> "WeakPartitionSolution":
        return cls(canonicalize(y))

    @classmethod
    def from_sets(cls, s: int, plus: Iterable[int], minus: Iterable[int] = ()) -> "WeakPartitionSolution":
        plus, minus = set(plus), set(minus)
        if plus & minus:
            raise ValidationError("the two index sets must be disjoint")
        if not all(1 <= i <= s for i in plus | minus):
            raise ValidationError(f"indices must lie in 1..{s}")
        return cls.from_vector([1 if i in plus else -1 if i in minus else 0 for i in range(1, s + 1)])

    @classmethod
    def parse(cls, text: str) -> "WeakPartitionSolution":
        try:
            return cls(tuple(_FROM_DIGIT[ch] for ch in text.strip()))
        except KeyError:
            raise ValidationError(f"not a signed-digit string: {text!r}") from None

    @property
    def s(self) -> int:
        return len(self.y)

    @property
    def plus(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.y, 1) if v == 1)

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.y, 1) if v == -1)

    @property
    def y_plus(self) -> tuple[int, ...]:
        return tuple(int(v == 1) for v in self.y)

    @property
    def y_minus(self) -> tuple[int, ...]:
        return tuple(int(v == -1) for v in self.y)

    @property
    def r(self) -> int:
        """Number of zero entries."""
        return self.y.count(0)

    @property
    def size(self) -> int:
        return self.s - self.r

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.y, 1) if v == 0)

    def solves(self, inst: Instance) -> bool:
        return inst.s == self.s and inst.signed_sum(self.y) == 0

    def __str__(self) -> str:
        return "".join(_DIGITS[v] for v in self.y)


class CollisionPair(NamedTuple):
    x1: tuple[int, ...]
    x2: tuple[int, ...]

    def is_collision(self, inst: Instance) -> bool:
        return (
            len(self.x1) == len(self.x2) == inst.s
            and self.x1 != self.x2
            and inst.evaluate(self.x1) == inst.evaluate(self.x2)
        )


@dataclass(frozen=True)
class LowerBoundReport:
    total_weighted: int
    rhs: int
    d0_bound: float | None
    image_size: int | None

    @property
    def holds(self) -> bool | None:
        """Whether the image is at least as large as the bound, if both are known."""
        if self.image_size is None or self.rhs <= 0:
            return None
        return self.image_size >= self.rhs

    def to_dict(self) -> dict:
        doc = {"total_weighted": self.total_weighted, "rhs": self.rhs}
        if self.d0_bound is not None:
            doc["d0_bound"] = float(f"{self.d0_bound:.15g}")
        if self.image_size is not None:
            doc["image_size"] = self.image_size
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_ternary(inst: Instance, caps: Caps | None) -> None:
    cap = get_caps(caps).ternary
    if inst.s > cap:
        raise InstanceTooLarge(f"s={inst.s} exceeds the ternary enumeration cap {cap}")


def weak_partition_vectors(inst: Instance, caps: Caps | None = None) -> np.ndarray:
    """Canonical solutions as an int8 array, one row per solution, lexicographic."""
    _check_ternary(inst, caps)
    if inst.modulus <= KERNEL_MAX_MODULUS:
        return kernels.weak_partition_vectors(np.array(inst.weights, dtype=np.int64), inst.modulus)
    rows = [
        y
        for y in itertools.product((-1, 0, 1), repeat=inst.s)
        if y > (0,) * inst.s and inst.signed_sum(y) == 0
    ]
    return np.array(rows, dtype=np.int8).reshape(len(rows), inst.s)


def weak_partition_enumerate(inst: Instance, caps: Caps | None = None) -> list[WeakPartitionSolution]:
    """Every canonical solution, sorted lexicographically with ``-1 < 0 < 1``.

    Solutions with an empty minus side, such as ``{S, {}}``, are included.
    """
    return [WeakPartitionSolution(tuple(row)) for row in weak_partition_vectors(inst, caps).tolist()]


def weighted_zero_count_dp(inst: Instance, caps: Caps | None = None) -> int:
    """``sum over canonical solutions y of 2^r(y)`` without enumerating ``3^s`` vectors.

    Convolving the per-weight kernels ``d_{-a} + 2 d_0 + d_{+a}`` gives, at
    residue 0, the sum of ``2^r(y)`` over every ``y`` (zero vector included).
    The zero vector contributes ``2^s`` and the remaining vectors pair off as
    ``+-y`` with equal ``r``.
    """
    caps = get_caps(caps)
    A = inst.modulus
    if A > caps.array:
        raise ModulusTooLarge(f"modulus {A} exceeds the array cap {caps.array}")
    if inst.s <= _SIGNED_INT64_MAX_S and A <= KERNEL_MAX_MODULUS:
        total = kernels.signed_zero_coefficient(np.array(sorted(inst.weights), dtype=np.int64), A)
    else:
        poly = np.zeros(A, dtype=object)
        poly[0] = 1
        for a in sorted(inst.weights):
            poly = 2 * poly + np.roll(poly, a) + np.roll(poly, -a)
        total = int(poly[0])
    excess = total - 2**inst.s
    if excess % 2:
        raise ArithmeticError(f"odd excess {excess}: the +-y pairing is broken")
    return excess // 2


def lower_bound(inst: Instance, caps: Caps | None = None) -> LowerBoundReport:
    """``|G({0,1}^s)| >= 2^s - sum_y 2^r(y)`` and, if positive, the matching bound on ``D_0``."""
    total = weighted_zero_count_dp(inst, caps)
    rhs = 2**inst.s - total
    bound = math.log(rhs) / math.log(inst.modulus) if rhs > 0 else None
    image = len(multiplicity_dp(inst, caps).support)
    return LowerBoundReport(total, rhs, bound, image)


def _indicator(indices: Iterable[int], s: int) -> tuple[int, ...]:
    chosen = set(indices)
    return tuple(int(i in chosen) for i in range(1, s + 1))


def expand_collisions(sol: WeakPartitionSolution, inst: Instance) -> list[CollisionPair]:
    """One collision ``(S_plus + T, S_minus + T)`` per subset ``T`` of the zero positions.

    Subsets are taken in lexicographic order of their indicator vectors, so
    the result has exactly ``2^r`` distinct pairs. The two sides of every pair
    differ by ``y``, so once ``y`` is checked against the instance every pair
    has equal images.
    """
    if not sol.solves(inst):
        raise SolutionInstanceMismatch(f"{sol} does not solve the weak partition problem for this instance")
    free = [i - 1 for i in sol.free]
    x1, x2 = list(sol.y_plus), list(sol.y_minus)
    pairs = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        for i, b in zip(free, bits):
            x1[i] = x2[i] = b
        pairs.append(CollisionPair(tuple(x1), tuple(x2)))
    return pairs


def collision_to_partition(pair: CollisionPair, inst: Instance) -> WeakPartitionSolution:
    """``{S1 - S2, S2 - S1}`` for a collision ``(S1, S2)``."""
    if len(pair.x1) != inst.s or not pair.is_collision(inst):
        raise NotACollision("the two vectors are equal or map to different residues")
    return WeakPartitionSolution.from_vector([a - b for a, b in zip(pair.x1, pair.x2)])


def four_collision(
    sol: WeakPartitionSolution,
    t1: Iterable[int],
    t2: Iterable[int],
    inst: Instance,
) -> tuple[WeakPartitionSolution, CollisionClass]:
    """Combine a solution with a second congruence on its free indices.

    If ``T1, T2`` avoid ``S_plus | S_minus`` and ``sum(S_plus + T1) = sum(S_plus + T2)``,
    then ``{T1 - T2, T2 - T1}`` is a further solution and the four sets
    ``S_plus + T1``, ``S_plus + T2``, ``S_minus + T1``, ``S_minus + T2`` share one
    residue. Returns the derived solution and that residue class.
    """
    if not sol.solves(inst):
        raise SolutionInstanceMismatch(f"{sol} does not solve the weak partition problem for this instance")
    t1, t2 = frozenset(t1), frozenset(t2)
    if not all(1 <= i <= inst.s for i in t1 | t2):
        raise ValidationError(f"indices must lie in 1..{inst.s}")
    used = sol.plus | sol.minus
    if (t1 | t2) & used:
        raise SetsNotFree(f"T1/T2 meet the support {sorted(used)} of the solution")
    if t1 == t2 or inst.subset_sum(sol.plus | t1) != inst.subset_sum(sol.plus | t2):
        raise HypothesisViolated("need T1 != T2 with sum(S_plus + T1) = sum(S_plus + T2) mod A")

    derived = WeakPartitionSolution.from_sets(inst.s, t1 - t2, t2 - t1)
    members = sorted({_indicator(side | t, inst.s) for side in (sol.plus, sol.minus) for t in (t1, t2)})
    residues = {inst.evaluate(x) for x in members}
    if len(members) != 4 or len(residues) != 1:
        raise ArithmeticError("four-collision construction failed verification")
    return derived, CollisionClass(residues.pop(), tuple(members))


def has_collision(inst: Instance, caps: Caps | None = None, crosscheck: bool = False) -> bool:
    """True iff some residue has two or more preimages.

    With ``crosscheck`` the answer is compared against the existence of a weak
    partition solution (ternary enumeration, so only for small ``s``).
    """
    caps = get_caps(caps)
    if inst.modulus <= caps.array:
        found = multiplicity_dp(inst, caps).max_count >= 2
    elif inst.s <= caps.brute:
        found = len(np.unique(subset_residues(inst))) < 2**inst.s
    else:
        raise ModulusTooLarge(f"modulus {inst.modulus} exceeds the array cap and s={inst.s} the brute-force cap")
    if crosscheck and found != (len(weak_partition_vectors(inst, caps)) > 0):
        raise ArithmeticError("collision test disagrees with weak partition enumeration")
    return found
