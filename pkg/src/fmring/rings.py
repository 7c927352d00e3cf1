"""Exact commutative base rings: the integers and the integers modulo m."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError, SchemaError

INTEGERS = "int"
INTEGERS_MOD = "mod"


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == INTEGERS:
            if self.modulus is not None:
                raise PreconditionError("Integers take no modulus")
        elif self.kind == INTEGERS_MOD:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise PreconditionError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        else:
            raise PreconditionError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(INTEGERS)

    @classmethod
    def mod(cls, m: int) -> "RingSpec":
        return cls(INTEGERS_MOD, m)

    @property
    def is_finite(self) -> bool:
        return self.kind == INTEGERS_MOD

    @property
    def is_prime_field(self) -> bool:
        return self.kind == INTEGERS_MOD and is_prime(self.modulus)

    def normalize(self, x: int) -> int:
        return normalize(x, self)

    def is_canonical(self, x) -> bool:
        if isinstance(x, bool) or not isinstance(x, int):
            return False
        return self.kind == INTEGERS or 0 <= x < self.modulus

    def elements(self):
        """Iterate the canonical representatives of a finite ring."""
        if not self.is_finite:
            raise PreconditionError("cannot enumerate the integers")
        return range(self.modulus)

    def to_json(self) -> dict:
        if self.kind == INTEGERS:
            return {"type": "int"}
        return {"type": "mod", "m": self.modulus}

    @classmethod
    def from_json(cls, obj, path="$") -> "RingSpec":
        if not isinstance(obj, dict):
            raise SchemaError(path, "ring descriptor must be an object")
        kind = obj.get("type")
        if kind == INTEGERS:
            extra = set(obj) - {"type"}
            if extra:
                raise SchemaError(path, f"unexpected keys {sorted(extra)} for ring type 'int'")
            return cls.integers()
        if kind == INTEGERS_MOD:
            m = obj.get("m")
            if isinstance(m, bool) or not isinstance(m, int) or m < 2:
                raise SchemaError(f"{path}.m", "modulus must be an integer >= 2")
            return cls.mod(m)
        raise SchemaError(f"{path}.type", f"unknown ring type {kind!r}")

    def __str__(self):
        return "Z" if self.kind == INTEGERS else f"Z/{self.modulus}"


def normalize(x: int, spec: RingSpec) -> int:
    if spec.kind == INTEGERS:
        return int(x)
    return int(x) % spec.modulus


def arith(op: str, x: int, y: Optional[int], spec: RingSpec) -> int:
    if op == "neg":
        return normalize(-x, spec)
    if y is None:
        raise PreconditionError(f"binary operation {op!r} needs a second operand")
    if op == "add":
        return normalize(x + y, spec)
    if op == "mul":
        return normalize(x * y, spec)
    raise PreconditionError(f"unknown operation {op!r}")


def add(x: int, y: int, spec: RingSpec) -> int:
    return normalize(x + y, spec)


def mul(x: int, y: int, spec: RingSpec) -> int:
    return normalize(x * y, spec)


def neg(x: int, spec: RingSpec) -> int:
    return normalize(-x, spec)


def is_unit(x: int, spec: RingSpec) -> bool:
    if spec.kind == INTEGERS:
        return abs(x) == 1
    return math.gcd(x, spec.modulus) == 1


def is_nilpotent(x: int, spec: RingSpec) -> bool:
    """True iff some power of ``x`` is zero.

    For Z/m this holds exactly when every prime dividing m divides x, and
    x**e == 0 already for e = the largest prime exponent of m.
    """
    if spec.kind == INTEGERS:
        return x == 0
    m = spec.modulus
    e = max(factorize(m).values())
    return pow(x, e, m) == 0


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def factorize(m: int) -> dict:
    """Prime factorization of m >= 2 as {prime: exponent}."""
    out = {}
    f = 2
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out
