"""Exact preimage counts ``|G^{-1}(c)|`` for every residue ``c``.

Counts are exact integers. While ``2^s`` fits in int64 they live in an int64
array and go through the compiled kernels; beyond that an object array of
Python ints is used, which is slow but never overflows.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .config import Caps, get_caps
from .errors import InstanceTooLarge, ModulusTooLarge, ValidationError
from .instance import Instance

# largest s whose total 2^s still fits a signed 64-bit counter
INT64_MAX_S = 62
# kernels add up to a few weights before reducing; keep that inside int64
KERNEL_MAX_MODULUS = 2**58


@dataclass(frozen=True, eq=False)
class MultiplicityVector:
    modulus: int
    s: int
    counts: np.ndarray

    def __post_init__(self):
        if len(self.counts) != self.modulus:
            raise ValidationError("counts must have one entry per residue")

    def __eq__(self, other):
        if not isinstance(other, MultiplicityVector):
            return NotImplemented
        if self.modulus != other.modulus or self.s != other.s:
            return False
        if self.counts.dtype == object or other.counts.dtype == object:
            return self.as_list() == other.as_list()
        return bool(np.array_equal(self.counts, other.counts))

    def as_list(self) -> list[int]:
        return [int(c) for c in self.counts]

    @property
    def total(self) -> int:
        return sum(self.as_list()) if self.counts.dtype == object else int(self.counts.sum())

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.counts != 0)

    def support_counts(self) -> list[int]:
        return [int(c) for c in self.counts[self.support]]

    def support_values(self) -> np.ndarray:
        """Nonzero counts in residue order (int64 or object dtype)."""
        return self.counts[self.counts != 0]

    @property
    def min_count(self) -> int:
        return int(self.support_values().min())

    @property
    def max_count(self) -> int:
        return int(self.support_values().max())

    @property
    def supposition_holds(self) -> bool:
        """Whether the rarest attained residue has exactly one preimage."""
        return self.min_count == 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["residue", "count"])
        writer.writerows((c, int(m)) for c, m in enumerate(self.counts))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"modulus": self.modulus, "s": self.s, "counts": self.as_list()})

    @classmethod
    def from_json(cls, text: str) -> "MultiplicityVector":
        doc = json.loads(text)
        return cls(doc["modulus"], doc["s"], np.array(doc["counts"], dtype=object))


@dataclass(frozen=True)
class CollisionClass:
    residue: int
    members: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MultiplicityHistogram:
    """``entries[l]`` is the number of residues with exactly ``l`` preimages."""

    entries: dict[int, int]

    @property
    def total(self) -> int:
        return sum(l * n for l, n in self.entries.items())

    @property
    def support_size(self) -> int:
        return sum(self.entries.values())


def _weights_array(inst: Instance) -> np.ndarray:
    return np.array(sorted(inst.weights), dtype=np.int64)


def multiplicity_dp(inst: Instance, caps: Caps | None = None) -> MultiplicityVector:
    """Counts for all residues in O(s*A) additions, one cyclic shift-and-add per weight."""
    caps = get_caps(caps)
    A = inst.modulus
    if A > caps.array:
        raise ModulusTooLarge(f"modulus {A} exceeds the array cap {caps.array}")
    if inst.s <= INT64_MAX_S and A <= KERNEL_MAX_MODULUS:
        counts = kernels.cyclic_subset_counts(_weights_array(inst), A)
    else:
        counts = np.zeros(A, dtype=object)
        counts[0] = 1
        for a in sorted(inst.weights):
            counts = counts + np.roll(counts, a)
    return MultiplicityVector(A, inst.s, counts)


def multiplicity_bruteforce(inst: Instance, caps: Caps | None = None) -> MultiplicityVector:
    """Counts by walking all ``2^s`` subsets."""
    caps = get_caps(caps)
    if inst.s > caps.brute:
        raise InstanceTooLarge(f"s={inst.s} exceeds the brute-force cap {caps.brute}")
    if inst.modulus > caps.array:
        raise ModulusTooLarge(f"modulus {inst.modulus} exceeds the array cap {caps.array}")
    if inst.modulus <= KERNEL_MAX_MODULUS:
        counts = kernels.subset_sum_histogram(np.array(inst.weights, dtype=np.int64), inst.modulus)
    else:
        counts = np.zeros(inst.modulus, dtype=object)
        for mask in range(1 << inst.s):
            counts[sum(a for i, a in enumerate(inst.weights) if mask >> i & 1) % inst.modulus] += 1
    return MultiplicityVector(inst.modulus, inst.s, counts)


def subset_residues(inst: Instance) -> np.ndarray:
    """``G(x)`` for every ``x``, indexed by the bitmask of ``x`` (bit i <-> a_{i+1})."""
    if inst.modulus <= KERNEL_MAX_MODULUS:
        return kernels.subset_sums(np.array(inst.weights, dtype=np.int64), inst.modulus)
    sums = [0]
    for a in inst.weights:
        sums += [(v + a) % inst.modulus for v in sums]
    return np.array(sums, dtype=object)


def _mask_vector(mask: int, s: int) -> tuple[int, ...]:
    return tuple(mask >> i & 1 for i in range(s))


def collision_classes(inst: Instance, min_size: int = 2, caps: Caps | None = None) -> list[CollisionClass]:
    """Full preimage classes of size at least ``min_size``, largest first.

    These are exactly the maximal cliques of the collision graph on
    ``{0,1}^s``, so no clique search is needed.
    """
    caps = get_caps(caps)
    if inst.s > caps.brute:
        raise InstanceTooLarge(f"s={inst.s} exceeds the brute-force cap {caps.brute}")
    threshold = max(min_size, 1)
    residues = subset_residues(inst)
    order = np.argsort(residues, kind="stable")
    ranked = residues[order]
    starts = np.flatnonzero(np.r_[True, ranked[1:] != ranked[:-1]])
    ends = np.r_[starts[1:], len(ranked)]
    classes = []
    for lo, hi in zip(starts, ends):
        if hi - lo < threshold:
            continue
        members = sorted(_mask_vector(int(mask), inst.s) for mask in order[lo:hi])
        classes.append(CollisionClass(int(ranked[lo]), tuple(members)))
    classes.sort(key=lambda c: (-c.size, c.residue))
    return classes


def multiplicity_histogram(mv: MultiplicityVector) -> MultiplicityHistogram:
    if mv.counts.dtype == object:
        tally = Counter(mv.support_counts())
    else:
        values, freq = np.unique(mv.counts[mv.counts > 0], return_counts=True)
        tally = dict(zip(values.tolist(), freq.tolist()))
    return MultiplicityHistogram({int(l): int(n) for l, n in sorted(tally.items())})
