"""Finite-dimensional algebras over F_p given by structure constants.

This is the ground-truth layer: formal matrix rings over a prime field are
turned into multiplication tables, and radicals, quotients and isomorphisms
are decided from first principles (exhaustive quasi-regularity, backtracking
search) rather than from structure theorems.

Basis vectors are indexed ``0..dim-1``; ``table[a][b][e]`` is the coefficient
of basis_e in basis_a * basis_b.  Elements are coordinate vectors (numpy
int64 arrays with entries in ``[0, p)``).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import modp
from .errors import GuardError, PreconditionError, SchemaError, StructuralError
from .multipliers import MultiplierSystem, is_valid
from .rings import is_prime

RADICAL_GUARD_LOG2 = 20
SEARCH_GUARD_LOG2 = 16
SEARCH_NODE_BUDGET = 200_000
_CHUNK = 1 << 14


def within_guard(p: int, dim: int, log2_cap: int) -> bool:
    """Whether exhaustive work over p**dim elements is allowed.

    ``FML_MAX_DIM`` in the environment replaces the element-count cap with a
    plain dimension cap.
    """
    override = os.environ.get("FML_MAX_DIM")
    if override:
        return dim <= int(override)
    return p ** dim <= 2 ** log2_cap


@dataclass(eq=False)
class FiniteAlgebra:
    p: int
    dim: int
    table: np.ndarray
    unity: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"characteristic {self.p} is not prime")
        d = self.dim
        self.table = np.asarray(self.table, dtype=np.int64).reshape(d, d, d) % self.p
        self.unity = np.asarray(self.unity, dtype=np.int64).reshape(d) % self.p
        if self.check:
            problems = self.validate()
            if problems:
                raise StructuralError("; ".join(problems))

    def validate(self) -> list:
        """Associativity of the table and two-sidedness of the unity."""
        problems = []
        c, p = self.table, self.p
        left = np.einsum("abe,ecf->abcf", c, c) % p
        right = np.einsum("bce,aef->abcf", c, c) % p
        if not np.array_equal(left, right):
            a, b, cc, _ = np.argwhere(left != right)[0]
            problems.append(f"table is not associative at basis ({a}, {b}, {cc})")
        eye = np.eye(self.dim, dtype=np.int64)
        if not np.array_equal(np.einsum("a,abe->be", self.unity, c) % p, eye):
            problems.append("unity is not a left identity")
        if not np.array_equal(np.einsum("b,abe->ae", self.unity, c) % p, eye):
            problems.append("unity is not a right identity")
        return problems

    @property
    def size(self) -> int:
        return self.p ** self.dim

    def mul(self, x, y):
        return np.einsum("a,b,abe->e", x, y, self.table) % self.p

    def left_matrix(self, x):
        """``L`` with ``x * y == L @ y``."""
        return np.einsum("a,abe->eb", x, self.table) % self.p

    def right_matrix(self, y):
        """``R`` with ``x * y == R @ x``."""
        return np.einsum("b,abe->ea", y, self.table) % self.p

    def basis_vector(self, a):
        v = np.zeros(self.dim, dtype=np.int64)
        v[a] = 1
        return v

    def elements(self):
        return modp.all_vectors(self.dim, self.p)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    def center(self):
        d = self.dim
        comm = (self.table - self.table.transpose(1, 0, 2)) % self.p
        # rows indexed by (b, e), columns by a
        m = comm.transpose(1, 2, 0).reshape(d * d, d)
        return modp.nullspace(m, self.p)

    def same_table(self, other) -> bool:
        return (
            self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self.table, other.table)
            and np.array_equal(self.unity, other.unity)
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "dim": self.dim,
            "unity": self.unity.tolist(),
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json(cls, obj, path="$") -> "FiniteAlgebra":
        if not isinstance(obj, dict):
            raise SchemaError(path, "algebra must be an object")
        for key in ("p", "dim", "unity", "table"):
            if key not in obj:
                raise SchemaError(path, f"missing key {key!r}")
        p, d = obj["p"], obj["dim"]
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise SchemaError(f"{path}.p", "characteristic must be a prime integer")
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise SchemaError(f"{path}.dim", "dimension must be a positive integer")
        unity = _nested_field(obj["unity"], (d,), f"{path}.unity", p)
        table = _nested_field(obj["table"], (d, d, d), f"{path}.table", p)
        try:
            return cls(p, d, np.array(table), np.array(unity))
        except StructuralError as exc:
            raise SchemaError(path, str(exc)) from None


def _nested_field(value, shape, path, p):
    if not shape:
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < p:
            raise SchemaError(path, f"expected an integer in [0, {p}), got {value!r}")
        return value
    if not isinstance(value, list) or len(value) != shape[0]:
        raise SchemaError(path, f"expected a list of length {shape[0]}")
    return [_nested_field(v, shape[1:], f"{path}[{i}]", p) for i, v in enumerate(value)]


@dataclass(eq=False)
class Ideal:
    basis: np.ndarray  # rows, reduced echelon form

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def contains(self, v, p) -> bool:
        return modp.in_span(self.basis, v, p)

    def to_json(self) -> list:
        return self.basis.tolist()


def make_ideal(vectors, alg: FiniteAlgebra) -> Ideal:
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, alg.dim)
    return Ideal(modp.row_basis(vectors, alg.p))


def zero_ideal(alg: FiniteAlgebra) -> Ideal:
    return Ideal(np.zeros((0, alg.dim), dtype=np.int64))


def ideal_generated(alg: FiniteAlgebra, vectors) -> Ideal:
    """Smallest two-sided ideal containing ``vectors``."""
    p, d = alg.p, alg.dim
    basis = modp.row_basis(np.asarray(vectors, dtype=np.int64).reshape(-1, d), p)
    while True:
        prods = [basis]
        for a in range(d):
            e = alg.basis_vector(a)
            prods.append((basis @ alg.left_matrix(e).T) % p)
            prods.append((basis @ alg.right_matrix(e).T) % p)
        grown = modp.row_basis(np.vstack(prods), p)
        if grown.shape[0] == basis.shape[0]:
            return Ideal(grown)
        basis = grown


def is_ideal(alg: FiniteAlgebra, ideal: Ideal) -> bool:
    p = alg.p
    if ideal.dim == 0:
        return True
    r = modp.rank(ideal.basis, p)
    for a in range(alg.dim):
        e = alg.basis_vector(a)
        for m in (alg.left_matrix(e), alg.right_matrix(e)):
            if modp.rank(np.vstack([ideal.basis, (ideal.basis @ m.T) % p]), p) != r:
                return False
    return True


def product_space(alg: FiniteAlgebra, u, v):
    """Row basis of the span of all products ``x * y`` with x in u, y in v."""
    p, d = alg.p, alg.dim
    if len(u) == 0 or len(v) == 0:
        return np.zeros((0, d), dtype=np.int64)
    prods = np.einsum("ia,jb,abe->ije", u, v, alg.table).reshape(-1, d) % p
    return modp.row_basis(prods, p)


def nilpotency_index(alg: FiniteAlgebra, ideal: Ideal) -> Optional[int]:
    """Least k with ideal**k == 0, or None if the powers never vanish."""
    if ideal.dim == 0:
        return 1
    power = ideal.basis
    for k in range(2, alg.dim + 2):
        power = product_space(alg, power, ideal.basis)
        if power.shape[0] == 0:
            return k
    return None


def from_formal_ring(sigma: MultiplierSystem) -> FiniteAlgebra:
    """The table of M(n, F_p, sigma) on matrix units ``E_ij`` (index ``i*n + j``).

    ``E_ij * E_kl = [j == k] s[i][j][l] E_il``.
    """
    ring = sigma.ring
    if not ring.is_prime_field:
        raise PreconditionError(f"base ring {ring} is not a prime field")
    if not is_valid(sigma):
        raise PreconditionError("multiplier system fails its defining identities")
    n, p = sigma.n, ring.modulus
    d = n * n
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, j, l in itertools.product(range(n), repeat=3):
        table[i * n + j, j * n + l, i * n + l] = sigma.s[i][j][l]
    unity = np.zeros(d, dtype=np.int64)
    for i in range(n):
        unity[i * n + i] = 1
    return FiniteAlgebra(p, d, table, unity)


def direct_product(*algs: FiniteAlgebra) -> FiniteAlgebra:
    p = algs[0].p
    d = sum(a.dim for a in algs)
    table = np.zeros((d, d, d), dtype=np.int64)
    unity = np.zeros(d, dtype=np.int64)
    off = 0
    for a in algs:
        if a.p != p:
            raise StructuralError("direct product needs a common characteristic")
        s = slice(off, off + a.dim)
        table[s, s, s] = a.table
        unity[s] = a.unity
        off += a.dim
    return FiniteAlgebra(p, d, table, unity)


def full_matrix_algebra(n: int, p: int) -> FiniteAlgebra:
    from .rings import RingSpec

    return from_formal_ring(MultiplierSystem.ones(n, RingSpec.mod(p)))


def complement_basis(alg: FiniteAlgebra, ideal: Ideal):
    """Standard basis vectors, taken in index order, extending ``ideal`` to a basis."""
    p = alg.p
    current = ideal.basis
    chosen = []
    r = modp.rank(current, p) if current.shape[0] else 0
    for a in range(alg.dim):
        e = alg.basis_vector(a)
        cand = np.vstack([current, e]) if current.shape[0] else e[None, :]
        if modp.rank(cand, p) > r:
            current, r = cand, r + 1
            chosen.append(e)
    return np.array(chosen, dtype=np.int64).reshape(len(chosen), alg.dim)


def _quotient(alg: FiniteAlgebra, ideal: Ideal):
    p, k = alg.p, ideal.dim
    comp = complement_basis(alg, ideal)
    full = np.vstack([ideal.basis, comp]) if k else comp
    full_inv = modp.inverse(full, p)
    q = comp.shape[0]
    prods = np.einsum("ia,jb,abe->ije", comp, comp, alg.table) % p
    coords = (prods.reshape(-1, alg.dim) @ full_inv) % p
    table = coords[:, k:].reshape(q, q, q)
    unity = ((alg.unity @ full_inv) % p)[k:]
    return FiniteAlgebra(p, q, table, unity), comp, full_inv


def quotient(alg: FiniteAlgebra, ideal: Ideal) -> FiniteAlgebra:
    """``alg / ideal`` on the complement basis given by :func:`complement_basis`."""
    if not is_ideal(alg, ideal):
        raise StructuralError("subspace is not a two-sided ideal")
    return _quotient(alg, ideal)[0]


def _nilpotent_core(alg: FiniteAlgebra) -> Ideal:
    """Sum of the nilpotent ideals generated by single basis vectors.

    A sum of nilpotent ideals is nilpotent, so this lies inside the radical.
    """
    p = alg.p
    gens = []
    for a in range(alg.dim):
        ideal = ideal_generated(alg, alg.basis_vector(a))
        if nilpotency_index(alg, ideal) is not None:
            gens.append(ideal.basis)
    if not gens:
        return zero_ideal(alg)
    core = Ideal(modp.row_basis(np.vstack(gens), p))
    if nilpotency_index(alg, core) is None:
        raise AssertionError("sum of nilpotent ideals is not nilpotent")
    return core


def unit_mask(alg: FiniteAlgebra, elems=None):
    """For every element (in :func:`modp.all_vectors` order) whether it is a unit.

    ``x`` is a unit iff its left regular representation is invertible.
    """
    if elems is None:
        elems = alg.elements()
    out = np.empty(len(elems), dtype=bool)
    for start in range(0, len(elems), _CHUNK):
        chunk = elems[start : start + _CHUNK]
        mats = np.einsum("na,abe->neb", chunk, alg.table) % alg.p
        out[start : start + _CHUNK] = modp.batched_nonsingular(mats, alg.p)
    return out


def _quasi_regular_radical(alg: FiniteAlgebra):
    """``{x : 1 - a*x is a unit for every a}`` by exhaustion, as a row basis."""
    p, d = alg.p, alg.dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if not within_guard(p, d, RADICAL_GUARD_LOG2):
        raise GuardError(f"radical enumeration guard: {p}^{d} elements exceeds 2^{RADICAL_GUARD_LOG2}")
    elems = alg.elements()
    units = unit_mask(alg, elems)
    one = alg.unity

    def passes(prods):
        return units[modp.encode((one - prods) % p, p)]

    # cheap necessary conditions first: a ranging over scalars and basis vectors
    alive = np.ones(len(elems), dtype=bool)
    probes = [alg.basis_vector(a) for a in range(d)] + [one]
    probes += list(elems[:: max(1, len(elems) // 64)])
    for probe in probes:
        idx = np.nonzero(alive)[0]
        prods = (elems[idx] @ alg.left_matrix(probe).T) % p
        alive[idx] = passes(prods)
    members = []
    for x in elems[np.nonzero(alive)[0]]:
        prods = (elems @ alg.right_matrix(x).T) % p
        if passes(prods).all():
            members.append(x)
    members = np.array(members, dtype=np.int64).reshape(-1, d)
    basis = modp.row_basis(members, p) if len(members) else np.zeros((0, d), dtype=np.int64)
    if len(members) != p ** basis.shape[0]:
        raise AssertionError("quasi-regular set is not a subspace")
    return basis


def radical(alg: FiniteAlgebra) -> Ideal:
    """The Jacobson radical, which for finite algebras is the prime radical.

    A nilpotent ideal N found from single generators is split off first,
    since J(A)/N = J(A/N); the quotient is then searched exhaustively for
    its quasi-regular elements.  The enumeration guard applies to A/N.
    """
    p = alg.p
    core = _nilpotent_core(alg)
    q, comp, _ = _quotient(alg, core)
    lifted = (_quasi_regular_radical(q) @ comp) % p if q.dim else np.zeros((0, alg.dim), dtype=np.int64)
    parts = [b for b in (core.basis, lifted) if b.shape[0]]
    rad = make_ideal(np.vstack(parts), alg) if parts else zero_ideal(alg)
    if not is_ideal(alg, rad):
        raise AssertionError("computed radical is not an ideal")
    if nilpotency_index(alg, rad) is None:
        raise AssertionError("computed radical is not nilpotent")
    return rad


def count_idempotents(alg: FiniteAlgebra) -> int:
    p, total = alg.p, 0
    elems = alg.elements()
    for start in range(0, len(elems), _CHUNK):
        x = elems[start : start + _CHUNK]
        sq = np.einsum("na,nb,abe->ne", x, x, alg.table) % p
        total += int(np.all(sq == x, axis=1).sum())
    return total


def invariant_profile(alg: FiniteAlgebra) -> dict:
    """Isomorphism invariants; entries that would exceed a guard are ``None``."""
    prof = {
        "p": alg.p,
        "dim": alg.dim,
        "commutative": alg.is_commutative(),
        "center_dim": int(alg.center().shape[0]),
        "radical_dim": None,
        "radical_square_dim": None,
        "idempotents": None,
    }
    try:
        rad = radical(alg)
        prof["radical_dim"] = rad.dim
        prof["radical_square_dim"] = int(product_space(alg, rad.basis, rad.basis).shape[0])
    except GuardError:
        pass
    if within_guard(alg.p, alg.dim, SEARCH_GUARD_LOG2):
        prof["idempotents"] = count_idempotents(alg)
    return prof


def profile_difference(pa: dict, pb: dict) -> Optional[str]:
    """Name of the first invariant known on both sides that differs, else None."""
    for key in pa:
        if pa[key] is not None and pb[key] is not None and pa[key] != pb[key]:
            return key
    return None


ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not_isomorphic"
INCONCLUSIVE = "inconclusive"


@dataclass(eq=False)
class OracleResult:
    status: str
    reason: str
    witness: Optional[np.ndarray] = None  # row a = image of basis_a

    @property
    def is_isomorphic(self) -> Optional[bool]:
        return {ISOMORPHIC: True, NOT_ISOMORPHIC: False}.get(self.status)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.tolist(),
        }


def verify_isomorphism(a: FiniteAlgebra, b: FiniteAlgebra, w) -> bool:
    """Whether ``basis_i -> w[i]`` is a unity-preserving linear isomorphism a -> b."""
    p = a.p
    w = np.asarray(w, dtype=np.int64) % p
    if a.p != b.p or a.dim != b.dim or w.shape != (a.dim, b.dim):
        return False
    if modp.rank(w, p) != a.dim:
        return False
    images = np.einsum("ia,jb,abe->ije", w, w, b.table) % p
    transported = np.einsum("ije,ef->ijf", a.table, w) % p
    if not np.array_equal(images, transported):
        return False
    return bool(np.array_equal((a.unity @ w) % p, b.unity))


def _degrees(alg):
    nz = alg.table != 0
    return nz.sum(axis=(1, 2)) + nz.sum(axis=(0, 2)) + nz.sum(axis=(0, 1))


class _Search:
    """Backtracking over images of basis elements of ``a`` inside ``b``."""

    def __init__(self, a, b, budget):
        self.a, self.b, self.p, self.d = a, b, a.p, a.dim
        elems = b.elements()[1:]  # nonzero elements
        # sparse images first: witnesses that relabel a basis are found early
        self.elems = elems[np.argsort(np.count_nonzero(elems, axis=1), kind="stable")]
        self.support = [[set(np.nonzero(a.table[x, y])[0]) for y in range(self.d)] for x in range(self.d)]
        self.unity_support = set(np.nonzero(a.unity)[0])
        self.degree = _degrees(a)
        self.budget = budget
        self.nodes = 0

    def _checkable(self, x, assigned):
        known = set(assigned) | {x}
        count = 0
        for y in known:
            count += self.support[x][y] <= known
            if y != x:
                count += self.support[y][x] <= known
        if self.unity_support <= known and x in self.unity_support:
            count += 2
        return count

    def _next(self, assigned):
        free = [x for x in range(self.d) if x not in assigned]
        return max(free, key=lambda x: (self._checkable(x, assigned), self.degree[x], -x))

    def _candidates(self, x, assigned):
        a, b, p = self.a, self.b, self.p
        ys = self.elems
        known = set(assigned) | {x}

        def image_of(prod_coeffs):
            # sum over assigned e of c_e * phi(e) + c_x * y, for all y at once
            const = np.zeros(self.d, dtype=np.int64)
            for e in np.nonzero(prod_coeffs)[0]:
                if e != x:
                    const = const + prod_coeffs[e] * assigned[e]
            return lambda Y: (const + prod_coeffs[x] * Y) % p

        if self.unity_support <= known and x in self.unity_support:
            rest = sum((a.unity[e] * assigned[e] for e in self.unity_support if e != x), np.zeros(self.d, dtype=np.int64))
            y = ((b.unity - rest) * pow(int(a.unity[x]), -1, p)) % p
            ys = y[None, :] if y.any() else ys[:0]
        if self.support[x][x] <= known and len(ys):
            rhs = image_of(a.table[x, x])
            sq = np.einsum("na,nb,abe->ne", ys, ys, b.table) % p
            ys = ys[np.all(sq == rhs(ys), axis=1)]
        for y_idx, v in assigned.items():
            if not len(ys):
                break
            if self.support[x][y_idx] <= known:
                lhs = (ys @ b.right_matrix(v).T) % p
                ys = ys[np.all(lhs == image_of(a.table[x, y_idx])(ys), axis=1)]
            if len(ys) and self.support[y_idx][x] <= known:
                lhs = (ys @ b.left_matrix(v).T) % p
                ys = ys[np.all(lhs == image_of(a.table[y_idx, x])(ys), axis=1)]
        if assigned and len(ys):
            span = np.array(list(assigned.values()), dtype=np.int64)
            annihilator = modp.nullspace(span, p)
            if annihilator.shape[0]:
                ys = ys[np.any((ys @ annihilator.T) % p != 0, axis=1)]
            else:
                ys = ys[:0]
        return ys

    def run(self, assigned=None):
        if assigned is None:
            assigned = {}
        if len(assigned) == self.d:
            return assigned
        self.nodes += 1
        if self.nodes > self.budget:
            raise GuardError(f"search exceeded its budget of {self.budget} nodes")
        x = self._next(assigned)
        for y in self._candidates(x, assigned):
            assigned[x] = y
            found = self.run(assigned)
            if found is not None:
                return found
            del assigned[x]
        return None


def isomorphic(a: FiniteAlgebra, b: FiniteAlgebra, budget: int = SEARCH_NODE_BUDGET) -> OracleResult:
    """Decide whether two algebras are isomorphic.

    Cheap invariants are compared first; then, within the search guard, a
    backtracking search assigns images of basis elements, keeping only
    candidates whose products with already-assigned images agree with the
    table.  Any witness found is re-verified by full table transport.
    """
    if a.p != b.p:
        return OracleResult(NOT_ISOMORPHIC, f"characteristics differ: {a.p} vs {b.p}")
    if a.dim != b.dim:
        return OracleResult(NOT_ISOMORPHIC, f"dimensions differ: {a.dim} vs {b.dim}")
    if a.same_table(b):
        return OracleResult(ISOMORPHIC, "identical tables", np.eye(a.dim, dtype=np.int64))
    pa, pb = invariant_profile(a), invariant_profile(b)
    key = profile_difference(pa, pb)
    if key is not None:
        return OracleResult(NOT_ISOMORPHIC, f"invariant {key} differs: {pa[key]} vs {pb[key]}")
    if not within_guard(a.p, a.dim, SEARCH_GUARD_LOG2):
        return OracleResult(INCONCLUSIVE, f"invariants agree and {a.p}^{a.dim} exceeds the search guard")
    search = _Search(a, b, budget)
    try:
        found = search.run()
    except GuardError as exc:
        return OracleResult(INCONCLUSIVE, str(exc))
    if found is None:
        return OracleResult(NOT_ISOMORPHIC, f"exhaustive search found no isomorphism ({search.nodes} nodes)")
    w = np.array([found[i] for i in range(a.dim)], dtype=np.int64)
    if not verify_isomorphism(a, b, w):
        raise AssertionError("search produced a map that fails verification")
    return OracleResult(ISOMORPHIC, f"witness found by search ({search.nodes} nodes)", w)
