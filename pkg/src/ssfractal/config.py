"""Resource caps.

Defaults can be overridden process-wide through the ``SSFRACTAL_CAPS``
environment variable, e.g. ``brute=24,ternary=16,modulus=9007199254740991``.
Recognised keys: ``brute`` (2^s enumeration), ``ternary`` (3^s enumeration),
``modulus`` (largest modulus a generator may emit), ``array`` (largest
residue-indexed array), ``output`` (largest attractor digit listing) and
``depth`` (largest attractor digit depth).
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

from .errors import ValidationError

ENV_VAR = "SSFRACTAL_CAPS"


@dataclass(frozen=True)
class Caps:
    brute: int = 24
    ternary: int = 16
    modulus: int = 2**63 - 1
    array: int = 2**27
    output: int = 1_000_000
    depth: int = 64

    def replace(self, **changes) -> "Caps":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    @classmethod
    def parse(cls, text: str, base: "Caps | None" = None) -> "Caps":
        base = base or cls()
        names = {f.name for f in dataclasses.fields(cls)}
        changes = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise ValidationError(f"bad cap entry {item!r}; expected one of {sorted(names)}=<int>")
            try:
                number = int(value)
            except ValueError:
                raise ValidationError(f"cap {key!r} must be an integer, got {value!r}") from None
            if number < 1:
                raise ValidationError(f"cap {key!r} must be positive")
            changes[key] = number
        return dataclasses.replace(base, **changes)

    @classmethod
    def from_env(cls) -> "Caps":
        text = os.environ.get(ENV_VAR, "")
        return cls.parse(text) if text else cls()


def get_caps(caps: Caps | None = None) -> Caps:
    return caps if caps is not None else Caps.from_env()
