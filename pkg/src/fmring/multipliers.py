"""Multiplier systems and the permutation action on them.

A multiplier system of order n over a commutative ring R is a tensor
``s[i][j][k]`` (0-based) with

    s[i][i][k] == 1 == s[i][k][k]
    s[i][j][k] * s[i][k][l] == s[i][j][l] * s[j][k][l]

for all indices.  A permutation ``tau`` acts by
``(tau . s)[i][j][k] = s[tau(i)][tau(j)][tau(k)]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Tuple

from .errors import PreconditionError, SchemaError, StructuralError
from .rings import RingSpec

Tensor = Tuple[Tuple[Tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise StructuralError(f"{list(images)} is not a permutation of 0..{len(images) - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``, i.e. ``i -> self(other(i))``."""
        if len(other) != len(self):
            raise StructuralError("cannot compose permutations of different degree")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def to_json(self) -> dict:
        return {"images": list(self.images)}

    @classmethod
    def from_json(cls, obj, path="$") -> "Permutation":
        if not isinstance(obj, dict) or "images" not in obj:
            raise SchemaError(path, "permutation must be an object with 'images'")
        images = obj["images"]
        if not isinstance(images, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in images
        ):
            raise SchemaError(f"{path}.images", "expected a list of integers")
        try:
            return cls(tuple(images))
        except StructuralError as exc:
            raise SchemaError(f"{path}.images", str(exc)) from None


def all_permutations(n: int):
    for images in itertools.permutations(range(n)):
        yield Permutation(images)


class Violation(NamedTuple):
    """One failed instance of the defining identities.

    ``kind`` is ``"unit"`` for ``s[i][i][k] = 1 = s[i][k][k]`` (index is a
    triple) or ``"cocycle"`` for the product identity (index is a quadruple).
    """

    kind: str
    index: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": list(self.index)}


class Classification(NamedTuple):
    is01: bool
    isS1: bool
    isK0: bool


@dataclass(frozen=True)
class MultiplierSystem:
    n: int
    ring: RingSpec
    s: Tensor

    def __post_init__(self):
        n = self.n
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise StructuralError(f"order n must be an integer >= 2, got {n!r}")
        s = self.s
        if len(s) != n or any(len(row) != n for row in s) or any(
            len(cell) != n for row in s for cell in row
        ):
            raise StructuralError(f"multiplier tensor must have shape {n}x{n}x{n}")
        frozen = tuple(tuple(tuple(cell) for cell in row) for row in s)
        for i, j, k in itertools.product(range(n), repeat=3):
            if not self.ring.is_canonical(frozen[i][j][k]):
                raise StructuralError(
                    f"entry s[{i}][{j}][{k}] = {frozen[i][j][k]!r} is not canonical in {self.ring}"
                )
        object.__setattr__(self, "s", frozen)

    @classmethod
    def from_function(cls, n: int, ring: RingSpec, fn) -> "MultiplierSystem":
        r = range(n)
        return cls(n, ring, tuple(tuple(tuple(ring.normalize(fn(i, j, k)) for k in r) for j in r) for i in r))

    @classmethod
    def ones(cls, n: int, ring: RingSpec) -> "MultiplierSystem":
        return cls.from_function(n, ring, lambda i, j, k: 1)

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.s[i][j][k]

    def entries(self):
        for i, j, k in itertools.product(range(self.n), repeat=3):
            yield (i, j, k), self.s[i][j][k]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ring": self.ring.to_json(),
            "s": [[list(cell) for cell in row] for row in self.s],
        }

    @classmethod
    def from_json(cls, obj, path="$") -> "MultiplierSystem":
        if not isinstance(obj, dict):
            raise SchemaError(path, "multiplier system must be an object")
        for key in ("n", "ring", "s"):
            if key not in obj:
                raise SchemaError(path, f"missing key {key!r}")
        ring = RingSpec.from_json(obj["ring"], f"{path}.ring")
        n = obj["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise SchemaError(f"{path}.n", "order must be an integer >= 2")
        s = _check_nested(obj["s"], (n, n, n), f"{path}.s", ring)
        return cls(n, ring, s)


def _check_nested(value, shape, path, ring):
    """Validate a nested list of canonical integers of the given shape."""
    if not shape:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(path, f"expected an integer, got {value!r}")
        if not ring.is_canonical(value):
            raise SchemaError(path, f"{value} is not a canonical element of {ring}")
        return value
    if not isinstance(value, list) or len(value) != shape[0]:
        raise SchemaError(path, f"expected a list of length {shape[0]}")
    return tuple(_check_nested(v, shape[1:], f"{path}[{idx}]", ring) for idx, v in enumerate(value))


def validate_identities(sigma: MultiplierSystem) -> list:
    """Every violated instance of the defining identities, unit part first.

    Checks all n**4 quadruples; an empty list means ``sigma`` is a genuine
    multiplier system.
    """
    n, s, ring = sigma.n, sigma.s, sigma.ring
    out = []
    for i, k in itertools.product(range(n), repeat=2):
        if s[i][i][k] != 1:
            out.append(Violation("unit", (i, i, k)))
        if s[i][k][k] != 1 and i != k:
            out.append(Violation("unit", (i, k, k)))
    norm = ring.normalize
    for i, j, k, l in itertools.product(range(n), repeat=4):
        if norm(s[i][j][k] * s[i][k][l]) != norm(s[i][j][l] * s[j][k][l]):
            out.append(Violation("cocycle", (i, j, k, l)))
    return out


def is_valid(sigma: MultiplierSystem) -> bool:
    return not validate_identities(sigma)


def principal_matrix(sigma: MultiplierSystem) -> Tuple[Tuple[int, ...], ...]:
    """The matrix ``S[i][j] = s[i][j][i]``."""
    r = range(sigma.n)
    return tuple(tuple(sigma.s[i][j][i] for j in r) for i in r)


def multiplier_matrix_k(sigma: MultiplierSystem, k: int) -> Tuple[Tuple[int, ...], ...]:
    """The matrix ``S_k[i][j] = s[i][k][j]``."""
    if not 0 <= k < sigma.n:
        raise StructuralError(f"index k = {k} out of range for order {sigma.n}")
    r = range(sigma.n)
    return tuple(tuple(sigma.s[i][k][j] for j in r) for i in r)


def permute(sigma: MultiplierSystem, tau: Permutation) -> MultiplierSystem:
    if len(tau) != sigma.n:
        raise StructuralError(f"permutation of degree {len(tau)} cannot act on order {sigma.n}")
    t, s = tau.images, sigma.s
    return MultiplierSystem.from_function(sigma.n, sigma.ring, lambda i, j, k: s[t[i]][t[j]][t[k]])


def permute_matrix(m: Sequence[Sequence[int]], tau: Permutation):
    """Simultaneous row/column relabeling ``(tau M)[i][j] = M[tau(i)][tau(j)]``."""
    t = tau.images
    if len(t) != len(m):
        raise StructuralError("permutation degree does not match matrix order")
    return tuple(tuple(m[t[i]][t[j]] for j in range(len(m))) for i in range(len(m)))


def check_s_candidate(s: int, ring: RingSpec) -> None:
    """Raise unless ``s*s`` differs from both 1 and ``s``."""
    if not ring.is_canonical(s):
        raise PreconditionError(f"s = {s!r} is not a canonical element of {ring}")
    sq = ring.normalize(s * s)
    if sq == 1:
        raise PreconditionError(f"s = {s} violates s^2 != 1 in {ring} (s^2 = 1)")
    if sq == s:
        raise PreconditionError(f"s = {s} violates s^2 != s in {ring} (s^2 = s)")


def _is_k0(sigma: MultiplierSystem) -> bool:
    s = sigma.s
    for i, j, k in itertools.permutations(range(sigma.n), 3):
        if s[i][j][i] == 0 and s[j][k][j] == 0 and s[i][j][k] != 0:
            return False
    return True


def classify(sigma: MultiplierSystem, s_candidate: Optional[int] = None) -> Classification:
    values = {v for _, v in sigma.entries()}
    is01 = values <= {0, 1}
    isS1 = False
    if s_candidate is not None:
        check_s_candidate(s_candidate, sigma.ring)
        isS1 = values <= {1, s_candidate}
    isK0 = is01 and _is_k0(sigma)
    return Classification(is01, isS1, isK0)
