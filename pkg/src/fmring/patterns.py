"""Principal multiplier patterns, canonical forms and realizations.

A principal pattern is a symmetric n x n matrix over two symbols, 1 and a
"zero-role" symbol (0, or an element s with s^2 != 1 and s^2 != s), with
unit diagonal, such that no triple of pairwise distinct indices has exactly
two of ``t[i][j], t[j][k], t[k][i]`` equal to 1.  That condition makes
``i ~ j  <=>  t[i][j] == 1`` an equivalence relation whose classes become
the diagonal blocks of the canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import GuardError, PreconditionError, SchemaError, StructuralError
from .multipliers import (
    MultiplierSystem,
    Permutation,
    _check_nested,
    check_s_candidate,
    permute_matrix,
)
from .rings import RingSpec

MAX_ENUMERATION_ORDER = 8


class InvalidPatternError(StructuralError):
    def __init__(self, violations):
        super().__init__(f"pattern violates the triple condition at {violations}")
        self.violations = violations


def _structure_problems(t) -> List[str]:
    n = len(t)
    problems = []
    if any(len(row) != n for row in t):
        return [f"pattern must be square ({n} rows)"]
    for i in range(n):
        if t[i][i] != 1:
            problems.append(f"diagonal entry [{i}][{i}] = {t[i][i]} is not 1")
        for j in range(i + 1, n):
            if t[i][j] != t[j][i]:
                problems.append(f"asymmetric at [{i}][{j}]: {t[i][j]} vs {t[j][i]}")
    symbols = {v for row in t for v in row}
    if len(symbols - {1}) > 1:
        problems.append(f"more than two symbols in pattern: {sorted(symbols)}")
    return problems


def check_triple_condition(t: Sequence[Sequence[int]]) -> List[Tuple[int, int, int]]:
    """Triples i < j < k with exactly two of t[i][j], t[j][k], t[k][i] equal to 1.

    Raises StructuralError when t is not square, symmetric, unit-diagonal
    and two-symbol.
    """
    problems = _structure_problems(t)
    if problems:
        raise StructuralError("; ".join(problems))
    bad = []
    for i, j, k in itertools.combinations(range(len(t)), 3):
        ones = (t[i][j] == 1) + (t[j][k] == 1) + (t[k][i] == 1)
        if ones == 2:
            bad.append((i, j, k))
    return bad


@dataclass(frozen=True)
class PrincipalPattern:
    n: int
    ring: RingSpec
    zero_symbol: int
    t: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        t = tuple(tuple(row) for row in self.t)
        object.__setattr__(self, "t", t)
        if len(t) != self.n:
            raise StructuralError(f"pattern must have {self.n} rows")
        if not self.ring.is_canonical(self.zero_symbol) or self.zero_symbol == 1:
            raise StructuralError(f"zero symbol {self.zero_symbol!r} is not a canonical non-unit symbol")
        if self.zero_symbol != 0:
            check_s_candidate(self.zero_symbol, self.ring)
        stray = {v for row in t for v in row} - {1, self.zero_symbol}
        if stray:
            raise StructuralError(f"pattern entries {sorted(stray)} are neither 1 nor {self.zero_symbol}")
        bad = check_triple_condition(t)
        if bad:
            raise InvalidPatternError(bad)

    @classmethod
    def from_rows(cls, rows, ring: RingSpec = RingSpec.integers(), zero_symbol: int = 0):
        return cls(len(rows), ring, zero_symbol, rows)

    @classmethod
    def from_partition(cls, n, blocks, ring: RingSpec = RingSpec.integers(), zero_symbol: int = 0):
        label = {}
        for b, block in enumerate(blocks):
            for i in block:
                label[i] = b
        rows = tuple(
            tuple(1 if label[i] == label[j] else zero_symbol for j in range(n)) for i in range(n)
        )
        return cls(n, ring, zero_symbol, rows)

    @property
    def is01(self) -> bool:
        return self.zero_symbol == 0

    def permuted(self, tau: Permutation) -> "PrincipalPattern":
        return PrincipalPattern(self.n, self.ring, self.zero_symbol, permute_matrix(self.t, tau))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ring": self.ring.to_json(),
            "zero_symbol": self.zero_symbol,
            "t": [list(r) for r in self.t],
        }

    @classmethod
    def raw_from_json(cls, obj, path="$"):
        """Parse without the validity checks: returns (n, ring, zero_symbol, t)."""
        if not isinstance(obj, dict):
            raise SchemaError(path, "pattern must be an object")
        for key in ("n", "t"):
            if key not in obj:
                raise SchemaError(path, f"missing key {key!r}")
        ring = RingSpec.from_json(obj.get("ring", {"type": "int"}), f"{path}.ring")
        n = obj["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"{path}.n", "order must be a positive integer")
        zero = obj.get("zero_symbol", 0)
        if isinstance(zero, bool) or not isinstance(zero, int) or not ring.is_canonical(zero):
            raise SchemaError(f"{path}.zero_symbol", f"{zero!r} is not a canonical element of {ring}")
        t = _check_nested(obj["t"], (n, n), f"{path}.t", ring)
        return n, ring, zero, t

    @classmethod
    def from_json(cls, obj, path="$") -> "PrincipalPattern":
        return cls(*cls.raw_from_json(obj, path))


@dataclass(frozen=True)
class CanonicalForm:
    sigma: Permutation
    block_sizes: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"sigma": self.sigma.to_json(), "block_sizes": list(self.block_sizes)}

    @classmethod
    def from_json(cls, obj, path="$") -> "CanonicalForm":
        if not isinstance(obj, dict) or "sigma" not in obj or "block_sizes" not in obj:
            raise SchemaError(path, "canonical form needs 'sigma' and 'block_sizes'")
        sizes = obj["block_sizes"]
        if not isinstance(sizes, list) or not all(isinstance(b, int) and b > 0 for b in sizes):
            raise SchemaError(f"{path}.block_sizes", "expected a list of positive integers")
        return cls(Permutation.from_json(obj["sigma"], f"{path}.sigma"), tuple(sizes))


def equivalence_classes(pattern: PrincipalPattern) -> List[Tuple[int, ...]]:
    """Classes of ``i ~ j <=> t[i][j] == 1``, each sorted, ordered by least element."""
    t, n = pattern.t, pattern.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(n), 2):
        if t[i][j] == 1:
            parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])
    # closure: the relation must be exactly "same class"
    label = {i: b for b, c in enumerate(classes) for i in c}
    for i, j in itertools.product(range(n), repeat=2):
        if (t[i][j] == 1) != (label[i] == label[j]):
            raise InvalidPatternError([(i, j)])
    return classes


def _ordered_classes(pattern):
    return sorted(equivalence_classes(pattern), key=lambda c: (-len(c), c[0]))


def canonical_form(pattern: PrincipalPattern) -> CanonicalForm:
    classes = _ordered_classes(pattern)
    images = tuple(i for c in classes for i in c)
    return CanonicalForm(Permutation(images), tuple(len(c) for c in classes))


def block_diagonal(block_sizes, zero_symbol=0):
    """The canonical block-diagonal pattern matrix for the given block sizes."""
    label = [b for b, size in enumerate(block_sizes) for _ in range(size)]
    n = len(label)
    return tuple(tuple(1 if label[i] == label[j] else zero_symbol for j in range(n)) for i in range(n))


def set_partitions(n: int):
    """Restricted growth strings of length n: a[0] = 0, a[i] <= 1 + max(a[:i])."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def enumerate_patterns(n: int, zero_symbol: int = 0, ring: RingSpec = RingSpec.integers()):
    """Every valid principal pattern of order n, each exactly once."""
    if n > MAX_ENUMERATION_ORDER:
        raise GuardError(f"pattern enumeration guard: n = {n} exceeds {MAX_ENUMERATION_ORDER}")
    if n < 1:
        raise PreconditionError("order must be positive")
    for labels in set_partitions(n):
        rows = tuple(
            tuple(1 if labels[i] == labels[j] else zero_symbol for j in range(n)) for i in range(n)
        )
        yield PrincipalPattern(n, ring, zero_symbol, rows)


def _class_index(pattern):
    return {i: b for b, c in enumerate(_ordered_classes(pattern)) for i in c}


def realize01(pattern: PrincipalPattern) -> MultiplierSystem:
    """The K0-form (01)-system whose principal matrix is ``pattern``.

    ``s[i][j][k] = 1`` iff ``i ~ j`` or ``j ~ k``, otherwise 0.
    """
    if not pattern.is01:
        raise PreconditionError("realize01 needs a pattern with zero symbol 0")
    block = _class_index(pattern)
    return MultiplierSystem.from_function(
        pattern.n,
        pattern.ring,
        lambda i, j, k: 1 if block[i] == block[j] or block[j] == block[k] else 0,
    )


def realize_s1(pattern: PrincipalPattern, s: int = None) -> MultiplierSystem:
    """An (s1)-system whose principal matrix is ``pattern``.

    Number the blocks in canonical order and let ``f(i, j) = 1`` when the
    block of i precedes the block of j, else 0.  Then

        s[i][j][k] = s ** (f(i, j) + f(j, k) - f(i, k))

    The exponent is always 0 or 1 and the identities hold because it is a
    coboundary.  With at most two blocks this is exactly "s when i, j and
    j, k are both inequivalent, 1 otherwise"; with three or more blocks that
    simpler rule breaks the identities (s[i][j][k] s[i][k][j] would have to
    equal s[j][k][j] = s, forcing s^2 = s).
    """
    if s is None:
        s = pattern.zero_symbol
    if pattern.is01 or s != pattern.zero_symbol:
        raise PreconditionError(f"pattern zero symbol {pattern.zero_symbol} does not match s = {s}")
    check_s_candidate(s, pattern.ring)
    block = _class_index(pattern)
    f = lambda i, j: 1 if block[i] < block[j] else 0
    return MultiplierSystem.from_function(
        pattern.n,
        pattern.ring,
        lambda i, j, k: s if f(i, j) + f(j, k) - f(i, k) == 1 else 1,
    )


def realize(pattern: PrincipalPattern) -> MultiplierSystem:
    return realize01(pattern) if pattern.is01 else realize_s1(pattern)
