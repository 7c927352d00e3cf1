"""Arithmetic in the formal matrix ring M(n, R, Sigma).

The product of A and B is twisted by the multiplier system:

    (A B)[i][j] = sum_k s[i][k][j] * A[i][k] * B[k][j]

With all multipliers equal to 1 this is the ordinary matrix product.

The relabeling ``A -> tau A`` with ``(tau A)[i][j] = A[tau(i)][tau(j)]`` is
a ring isomorphism from M(n, R, Sigma) onto M(n, R, tau Sigma), where
``tau Sigma`` is :func:`fmring.multipliers.permute` with the *same* tau.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Tuple

from .errors import SchemaError, StructuralError
from .multipliers import MultiplierSystem, Permutation, _check_nested, permute_matrix
from .rings import RingSpec


@dataclass(frozen=True)
class FormalMatrix:
    n: int
    ring: RingSpec
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise StructuralError(f"matrix entries must be {self.n}x{self.n}")
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if not self.ring.is_canonical(v):
                    raise StructuralError(f"entry [{i}][{j}] = {v!r} is not canonical in {self.ring}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows, ring: RingSpec) -> "FormalMatrix":
        rows = [[ring.normalize(v) for v in row] for row in rows]
        return cls(len(rows), ring, rows)

    @classmethod
    def zero(cls, n: int, ring: RingSpec) -> "FormalMatrix":
        return cls(n, ring, ((0,) * n,) * n)

    @classmethod
    def identity(cls, n: int, ring: RingSpec) -> "FormalMatrix":
        return cls(n, ring, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, n: int, ring: RingSpec, i: int, j: int) -> "FormalMatrix":
        """The matrix unit E_ij."""
        return cls(n, ring, tuple(tuple(int((a, b) == (i, j)) for b in range(n)) for a in range(n)))

    @classmethod
    def random(cls, n: int, ring: RingSpec, rng: random.Random, bound: int = 50) -> "FormalMatrix":
        if ring.is_finite:
            pick = lambda: rng.randrange(ring.modulus)
        else:
            pick = lambda: rng.randint(-bound, bound)
        return cls(n, ring, tuple(tuple(pick() for _ in range(n)) for _ in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __neg__(self):
        norm = self.ring.normalize
        return FormalMatrix(self.n, self.ring, tuple(tuple(norm(-v) for v in row) for row in self.entries))

    def __add__(self, other):
        return add(self, other)

    def to_json(self) -> dict:
        return {"n": self.n, "ring": self.ring.to_json(), "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj, path="$") -> "FormalMatrix":
        if not isinstance(obj, dict):
            raise SchemaError(path, "matrix must be an object")
        for key in ("n", "ring", "entries"):
            if key not in obj:
                raise SchemaError(path, f"missing key {key!r}")
        ring = RingSpec.from_json(obj["ring"], f"{path}.ring")
        n = obj["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"{path}.n", "order must be a positive integer")
        return cls(n, ring, _check_nested(obj["entries"], (n, n), f"{path}.entries", ring))


def _check_compatible(*items):
    n, ring = items[0].n, items[0].ring
    for x in items[1:]:
        if x.n != n:
            raise StructuralError(f"order mismatch: {n} vs {x.n}")
        if x.ring != ring:
            raise StructuralError(f"ring mismatch: {ring} vs {x.ring}")


def add(a: FormalMatrix, b: FormalMatrix) -> FormalMatrix:
    _check_compatible(a, b)
    norm = a.ring.normalize
    rows = tuple(
        tuple(norm(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    )
    return FormalMatrix(a.n, a.ring, rows)


def twisted_multiply(a: FormalMatrix, b: FormalMatrix, sigma: MultiplierSystem) -> FormalMatrix:
    _check_compatible(a, b, sigma)
    n, s, norm = a.n, sigma.s, a.ring.normalize
    A, B = a.entries, b.entries
    rows = []
    for i in range(n):
        si, ai = s[i], A[i]
        row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = norm(acc + norm(si[k][j] * ai[k] * B[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return FormalMatrix(n, a.ring, tuple(rows))


def tau_image(a: FormalMatrix, tau: Permutation) -> FormalMatrix:
    if len(tau) != a.n:
        raise StructuralError(f"permutation of degree {len(tau)} cannot act on order {a.n}")
    return FormalMatrix(a.n, a.ring, permute_matrix(a.entries, tau))
