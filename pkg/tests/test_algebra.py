import itertools

import numpy as np
import pytest

from fmring import algebra, modp
from fmring.algebra import (
    FiniteAlgebra,
    direct_product,
    from_formal_ring,
    full_matrix_algebra,
    invariant_profile,
    is_ideal,
    isomorphic,
    make_ideal,
    nilpotency_index,
    quotient,
    radical,
    verify_isomorphism,
    zero_ideal,
)
from fmring.errors import GuardError, PreconditionError, SchemaError, StructuralError
from fmring.multipliers import MultiplierSystem
from fmring.patterns import PrincipalPattern, canonical_form, enumerate_patterns, realize01
from fmring.rings import RingSpec

F2 = RingSpec.mod(2)


def field(p):
    return FiniteAlgebra(p, 1, [[[1]]], [1])


def identity_pattern_algebra(n, p):
    pattern = PrincipalPattern.from_partition(n, [[i] for i in range(n)], RingSpec.mod(p))
    return from_formal_ring(realize01(pattern))


def brute_radical(alg):
    """{x : 1 - a x is a unit for every a}, with units found by searching for inverses."""
    elems = [np.array(v) for v in itertools.product(range(alg.p), repeat=alg.dim)]
    one = alg.unity
    units = set()
    for x in elems:
        if any(np.array_equal(alg.mul(x, y), one) for y in elems):
            units.add(tuple(x))
    return [x for x in elems if all(tuple((one - alg.mul(a, x)) % alg.p) in units for a in elems)]


def test_matrix_unit_products():
    m2 = full_matrix_algebra(2, 2)
    e01, e10 = m2.basis_vector(1), m2.basis_vector(2)
    assert np.array_equal(m2.mul(e01, e10), m2.basis_vector(0))
    k = identity_pattern_algebra(2, 2)
    assert not k.mul(e01, e10).any() and not k.mul(e10, e01).any()


def test_from_formal_ring_rejects_non_prime_and_invalid():
    with pytest.raises(PreconditionError):
        from_formal_ring(MultiplierSystem.ones(2, RingSpec.mod(4)))
    bad = MultiplierSystem.from_function(2, F2, lambda i, j, k: 0 if (i, j, k) == (0, 1, 0) else 1)
    with pytest.raises(PreconditionError):
        from_formal_ring(bad)


def test_tables_from_valid_systems_are_associative(valid01_n3, as_system):
    for p in (2, 3):
        for s in valid01_n3:
            alg = from_formal_ring(as_system(s, 3, RingSpec.mod(p)))
            assert alg.validate() == []


def test_non_associative_table_rejected():
    # basis 1, a, b with a*a = b and b*a = a, so (a*a)*a = a but a*(a*a) = a*b = 0
    table = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        table[0, i, i] = table[i, 0, i] = 1
    table[1, 1, 2] = 1
    table[2, 1, 1] = 1
    with pytest.raises(StructuralError):
        FiniteAlgebra(3, 3, table, [1, 0, 0])


@pytest.mark.parametrize(
    "alg, expected",
    [
        (full_matrix_algebra(2, 2), 0),
        (identity_pattern_algebra(2, 2), 2),
        (direct_product(field(2), field(2)), 0),
        (identity_pattern_algebra(2, 3), 2),
    ],
)
def test_radical_matches_exhaustive_quasi_regularity(alg, expected):
    rad = radical(alg)
    assert rad.dim == expected
    members = brute_radical(alg)
    assert len(members) == alg.p ** rad.dim
    assert all(rad.contains(x, alg.p) for x in members)


def test_identity_pattern_radical_is_off_diagonal():
    rad = radical(identity_pattern_algebra(2, 2))
    assert rad.basis.tolist() == [[0, 1, 0, 0], [0, 0, 1, 0]]


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_radical_dimension_law_and_semisimple_quotient(n, p):
    for pattern in enumerate_patterns(n, 0, RingSpec.mod(p)):
        alg = from_formal_ring(realize01(pattern))
        rad = radical(alg)
        sizes = canonical_form(pattern).block_sizes
        assert rad.dim == n * n - sum(b * b for b in sizes)
        assert nilpotency_index(alg, rad) is not None
        assert radical(quotient(alg, rad)).dim == 0


def test_radical_of_non_k0_systems_is_nilpotent_ideal(valid01_n3, as_system):
    for s in valid01_n3:
        alg = from_formal_ring(as_system(s, 3, F2))
        rad = radical(alg)
        assert is_ideal(alg, rad)
        assert radical(quotient(alg, rad)).dim == 0


def test_quotient_examples():
    k = identity_pattern_algebra(2, 2)
    q = quotient(k, radical(k))
    assert q.same_table(direct_product(field(2), field(2)))
    m2 = full_matrix_algebra(2, 2)
    assert quotient(m2, zero_ideal(m2)).same_table(m2)
    assert invariant_profile(quotient(k, zero_ideal(k))) == invariant_profile(k)


def test_quotient_rejects_non_ideal():
    m2 = full_matrix_algebra(2, 2)
    with pytest.raises(StructuralError):
        quotient(m2, make_ideal([[0, 1, 0, 0]], m2))


def test_radical_guard(monkeypatch):
    m4 = full_matrix_algebra(4, 3)  # 3^16 elements, no nilpotent ideals to split off
    with pytest.raises(GuardError):
        radical(m4)
    monkeypatch.setenv("FML_MAX_DIM", "2")
    with pytest.raises(GuardError):
        radical(full_matrix_algebra(2, 2))


def test_large_algebra_radical_via_nilpotent_reduction():
    alg = identity_pattern_algebra(5, 2)
    rad = radical(alg)
    assert rad.dim == 20
    q = quotient(alg, rad)
    assert q.dim == 5 and q.is_commutative()


def test_isomorphic_examples():
    m2 = full_matrix_algebra(2, 2)
    res = isomorphic(m2, m2)
    assert res.is_isomorphic and np.array_equal(res.witness, np.eye(4, dtype=int))
    res = isomorphic(m2, identity_pattern_algebra(2, 2))
    assert res.is_isomorphic is False and "radical_dim" in res.reason
    assert isomorphic(full_matrix_algebra(2, 2), direct_product(*[field(2)] * 5)).is_isomorphic is False


def _relabel(alg, perm):
    """The same algebra written on the basis reordered by ``perm``."""
    perm = list(perm)
    inv = np.argsort(perm)
    table = alg.table[np.ix_(perm, perm, range(alg.dim))][:, :, perm]
    return FiniteAlgebra(alg.p, alg.dim, table, alg.unity[perm]), inv


def test_search_recovers_basis_relabelings():
    m2 = full_matrix_algebra(2, 3)
    b, _ = _relabel(m2, [3, 1, 0, 2])
    res = isomorphic(m2, b)
    assert res.is_isomorphic
    assert verify_isomorphism(m2, b, res.witness)


def test_search_handles_non_basis_changes():
    # conjugating M(2, F_3) by an invertible matrix gives a table with dense structure constants
    m2 = full_matrix_algebra(2, 3)
    g = np.array([[1, 1], [0, 1]])
    g_inv = np.array([[1, 2], [0, 1]])
    units = [np.array([[int((a, b) == (i, j)) for b in range(2)] for a in range(2)]) for i in range(2) for j in range(2)]
    new_basis = [(g @ u @ g_inv) % 3 for u in units]
    change = np.array([nb.reshape(-1) for nb in new_basis])
    inv = modp.inverse(change, 3)
    table = np.einsum("ia,jb,abe,ef->ijf", change, change, m2.table, inv) % 3
    other = FiniteAlgebra(3, 4, table, (m2.unity @ inv) % 3)
    res = isomorphic(m2, other)
    assert res.is_isomorphic and verify_isomorphism(m2, other, res.witness)


def _monomial_algebra(p, monomials, rules):
    """Commutative algebra on the given monomial basis; ``rules`` maps index pairs to a product index."""
    dim = len(monomials)
    table = np.zeros((dim, dim, dim), dtype=int)
    for (i, j), k in rules.items():
        table[i, j, k] = table[j, i, k] = 1
    return FiniteAlgebra(p, dim, table, [1] + [0] * (dim - 1))


def _local(monomials, relation_free):
    idx = {m: i for i, m in enumerate(monomials)}
    rules = {}
    for a, b in itertools.product(monomials, repeat=2):
        prod = tuple(x + y for x, y in zip(a, b))
        if prod in idx and relation_free(prod):
            rules[idx[a], idx[b]] = idx[prod]
    return _monomial_algebra(2, monomials, rules)


def test_radical_square_separates_local_algebras():
    # F2[x,y]/(x,y)^2 against F2[x]/(x^3)
    a = _local([(0, 0), (1, 0), (0, 1)], lambda m: sum(m) < 2)
    b = _local([(0,), (1,), (2,)], lambda m: True)
    res = isomorphic(a, b)
    assert res.is_isomorphic is False and "radical_square_dim" in res.reason


def test_search_proves_non_isomorphism_when_invariants_agree():
    # F2[x,y]/(x^2,y^2) squares every radical element to zero, F2[x,y]/(x^2,xy,y^3) does not
    a = _local([(0, 0), (1, 0), (0, 1), (1, 1)], lambda m: m[0] < 2 and m[1] < 2)
    b = _local([(0, 0), (1, 0), (0, 1), (0, 2)], lambda m: m[0] < 2 and not (m[0] and m[1]) and m[1] < 3)
    assert invariant_profile(a) == invariant_profile(b)
    res = isomorphic(a, b)
    assert res.status == algebra.NOT_ISOMORPHIC
    assert isomorphic(b, a).status == algebra.NOT_ISOMORPHIC


def test_upper_triangular_isomorphic_to_opposite():
    a = FiniteAlgebra(2, 3, _upper_triangular_2x2_plus(), [1, 0, 1])
    b = FiniteAlgebra(2, 3, a.table.transpose(1, 0, 2).copy(), [1, 0, 1])
    assert invariant_profile(a) == invariant_profile(b)
    res = isomorphic(a, b)
    assert res.is_isomorphic and verify_isomorphism(a, b, res.witness)


def _upper_triangular_2x2_plus():
    # basis e11 (0), e12 (1), e22 (2)
    t = np.zeros((3, 3, 3), dtype=int)
    t[0, 0, 0] = 1
    t[0, 1, 1] = 1
    t[1, 2, 1] = 1
    t[2, 2, 2] = 1
    return t


def test_inconclusive_beyond_guard(monkeypatch):
    monkeypatch.setattr(algebra, "SEARCH_GUARD_LOG2", 2)
    a = full_matrix_algebra(2, 2)
    b, _ = _relabel(a, [3, 1, 2, 0])
    assert isomorphic(a, b).status == algebra.INCONCLUSIVE


def test_oracle_reflexive_and_symmetric_on_corpus():
    corpus = [
        full_matrix_algebra(2, 2),
        identity_pattern_algebra(2, 2),
        direct_product(field(2), field(2)),
        direct_product(field(2), field(2), field(2), field(2)),
        FiniteAlgebra(2, 3, _upper_triangular_2x2_plus(), [1, 0, 1]),
        _relabel(full_matrix_algebra(2, 2), [1, 0, 3, 2])[0],
        direct_product(field(2), field(2), field(2), field(2), field(2)),
    ]
    for a in corpus:
        assert isomorphic(a, a).is_isomorphic
    for a, b in itertools.combinations(corpus, 2):
        ab, ba = isomorphic(a, b), isomorphic(b, a)
        assert ab.is_isomorphic == ba.is_isomorphic
        for res, (x, y) in ((ab, (a, b)), (ba, (b, a))):
            if res.is_isomorphic:
                assert verify_isomorphism(x, y, res.witness)
            prefilter = algebra.profile_difference(invariant_profile(x), invariant_profile(y))
            if prefilter is not None:
                assert res.is_isomorphic is False


def test_algebra_json_round_trip():
    alg = identity_pattern_algebra(2, 3)
    back = FiniteAlgebra.from_json(alg.to_json())
    assert back.same_table(alg)


@pytest.mark.parametrize(
    "mutate, path",
    [
        (lambda d: d.update(p=4), "$.p"),
        (lambda d: d["table"][0][0].__setitem__(0, 7), "$.table[0][0][0]"),
        (lambda d: d.update(unity=[1, 0]), "$.unity"),
    ],
)
def test_algebra_json_errors(mutate, path):
    doc = identity_pattern_algebra(2, 3).to_json()
    mutate(doc)
    with pytest.raises(SchemaError) as info:
        FiniteAlgebra.from_json(doc)
    assert info.value.path == path
