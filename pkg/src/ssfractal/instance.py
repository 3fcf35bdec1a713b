"""Subset-sum instances, the families built from them, and the instance file format.

An :class:`Instance` is the subset sum function ``G(x) = sum(x_i * a_i) mod A``
on ``{0,1}^s``. Weights are kept as an ordered tuple: solutions are indexed
by position, so repeated weights are legal.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import Caps, get_caps
from .errors import DensityOverflow, EmptyWeights, ParseError, ValidationError, WeightOutOfRange

FAMILY_KINDS = ("arithmetic", "random-density", "superincreasing", "explicit-list")


def _is_int(value) -> bool:
    return isinstance(value, (int, np.integer)) and not isinstance(value, bool)


@dataclass(frozen=True)
class Instance:
    modulus: int
    weights: tuple[int, ...]
    comment: str | None = field(default=None, compare=False)

    @property
    def s(self) -> int:
        return len(self.weights)

    @property
    def max_weight_ratio(self) -> float:
        """``max(a_i) / A``. Informational only: nothing requires it to be near 1."""
        return max(self.weights) / self.modulus

    def evaluate(self, x: Sequence[int]) -> int:
        """``G(x)`` for a 0/1 vector ``x``."""
        if len(x) != self.s:
            raise ValidationError(f"vector has length {len(x)}, instance has s={self.s}")
        return sum(a for a, bit in zip(self.weights, x) if bit) % self.modulus

    def signed_sum(self, y: Sequence[int]) -> int:
        """``sum(y_i * a_i) mod A`` for a signed vector ``y``."""
        return sum(a * v for a, v in zip(self.weights, y)) % self.modulus

    def subset_sum(self, indices: Iterable[int]) -> int:
        """Residue of the sum over a set of 1-based indices."""
        return sum(self.weights[i - 1] for i in indices) % self.modulus


def new_instance(weights: Iterable[int], modulus: int, comment: str | None = None) -> Instance:
    """Validate and build an instance; every weight must lie in ``[1, modulus-1]``."""
    weights = tuple(weights)
    if not _is_int(modulus) or modulus < 2:
        raise ValidationError(f"modulus must be an integer >= 2, got {modulus!r}")
    if not weights:
        raise EmptyWeights("weights must be nonempty")
    for i, a in enumerate(weights, start=1):
        if not _is_int(a):
            raise ValidationError(f"weight a_{i} is not an integer: {a!r}")
        if not 1 <= a <= modulus - 1:
            raise WeightOutOfRange(f"weight a_{i}={a} outside [1, {modulus - 1}]")
    return Instance(int(modulus), tuple(int(a) for a in weights), comment)


def density(inst: Instance) -> float:
    """``s / log2(A)``."""
    return inst.s / math.log2(inst.modulus)


def _rng(seed: int) -> np.random.Generator:
    # Philox is counter-based, so streams are reproducible across platforms.
    return np.random.Generator(np.random.Philox(seed))


def gen_arithmetic(s: int, a: int) -> Instance:
    """Weights ``a, 2a, ..., sa`` modulo ``(s+1)a``."""
    if s < 1 or a < 1:
        raise ValidationError("arithmetic progression needs s >= 1 and a >= 1")
    return new_instance([j * a for j in range(1, s + 1)], (s + 1) * a)


def gen_random_density(s: int, rho: float, seed: int, caps: Caps | None = None) -> Instance:
    """Uniform random weights with modulus ``round(2^(s/rho))``, so the density is about ``rho``."""
    if s < 1 or not rho > 0:
        raise ValidationError("random-density instance needs s >= 1 and rho > 0")
    cap = get_caps(caps).modulus
    exponent = s / rho
    if exponent > math.log2(cap):
        raise DensityOverflow(f"2^{exponent:g} exceeds the modulus cap {cap}")
    modulus = min(max(2, round(2.0**exponent)), cap)
    weights = _rng(seed).integers(1, modulus, size=s, dtype=np.int64, endpoint=False)
    return new_instance(weights.tolist(), modulus)


def gen_superincreasing(s: int, seed: int, max_slack: int = 3) -> Instance:
    """Superincreasing weights, so ``G`` is injective and misses at least two residues.

    Each weight exceeds the running total by ``1 + slack`` with ``slack`` drawn
    from ``[0, max_slack]``; ``max_slack=0`` gives ``1, 2, 4, ...``. The
    modulus is ``total + 3 + slack``, which leaves the residues ``total+1`` and
    ``total+2`` uncovered.
    """
    if s < 1 or max_slack < 0:
        raise ValidationError("superincreasing instance needs s >= 1 and max_slack >= 0")
    rng = _rng(seed)
    slack = rng.integers(0, max_slack + 1, size=s + 1).tolist()
    weights, total = [], 0
    for i in range(s):
        a = total + 1 + slack[i]
        weights.append(a)
        total += a
    return new_instance(weights, total + 3 + slack[s])


@dataclass(frozen=True)
class InstanceFamily:
    """An ordered collection of instances indexed by strictly increasing integers.

    For the generated kinds the index of a member is its ``s``; explicit lists
    may supply their own indices.
    """

    kind: str
    parameters: dict
    members: tuple[Instance, ...]
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValidationError(f"unknown family kind {self.kind!r}")
        if len(self.members) != len(self.indices):
            raise ValidationError("one index per member is required")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValidationError("family indices must be strictly increasing")

    def __iter__(self):
        return iter(zip(self.indices, self.members))

    def __len__(self):
        return len(self.members)


def family_arithmetic(a: int, sizes: Iterable[int]) -> InstanceFamily:
    sizes = tuple(sizes)
    return InstanceFamily("arithmetic", {"a": a}, tuple(gen_arithmetic(s, a) for s in sizes), sizes)


def family_random_density(rho: float, seed: int, sizes: Iterable[int], caps: Caps | None = None) -> InstanceFamily:
    sizes = tuple(sizes)
    members = tuple(gen_random_density(s, rho, seed, caps) for s in sizes)
    return InstanceFamily("random-density", {"rho": rho, "seed": seed}, members, sizes)


def family_superincreasing(seed: int, sizes: Iterable[int]) -> InstanceFamily:
    sizes = tuple(sizes)
    members = tuple(gen_superincreasing(s, seed) for s in sizes)
    return InstanceFamily("superincreasing", {"seed": seed}, members, sizes)


def family_explicit(instances: Iterable[Instance], indices: Iterable[int] | None = None) -> InstanceFamily:
    members = tuple(instances)
    idx = tuple(indices) if indices is not None else tuple(m.s for m in members)
    return InstanceFamily("explicit-list", {}, members, idx)


# -- file format ---------------------------------------------------------------


def instance_to_dict(inst: Instance) -> dict:
    doc = {"modulus": inst.modulus, "weights": list(inst.weights)}
    if inst.comment is not None:
        doc["comment"] = inst.comment
    return doc


def instance_from_dict(doc, source: str = "<document>") -> Instance:
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object with 'modulus' and 'weights'")
    for key in ("modulus", "weights"):
        if key not in doc:
            raise ParseError(f"{source}: missing field {key!r}")
    modulus, weights = doc["modulus"], doc["weights"]
    if not _is_int(modulus):
        raise ParseError(f"{source}: field 'modulus' must be an integer, got {modulus!r}")
    if not isinstance(weights, list):
        raise ParseError(f"{source}: field 'weights' must be an array")
    for i, a in enumerate(weights):
        if not _is_int(a):
            raise ParseError(f"{source}: field 'weights[{i}]' must be an integer, got {a!r}")
    comment = doc.get("comment")
    if comment is not None and not isinstance(comment, str):
        raise ParseError(f"{source}: field 'comment' must be a string")
    return new_instance(weights, modulus, comment)


def load_instance(path) -> Instance:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc, str(path))


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst)) + "\n", encoding="utf-8")
