import itertools

import pytest

from fmring.errors import PreconditionError, SchemaError, StructuralError
from fmring.multipliers import (
    MultiplierSystem,
    Permutation,
    Violation,
    all_permutations,
    classify,
    multiplier_matrix_k,
    permute,
    permute_matrix,
    principal_matrix,
    validate_identities,
)
from fmring.patterns import PrincipalPattern, check_triple_condition, realize01
from fmring.rings import RingSpec

Z = RingSpec.integers()
MOD4 = RingSpec.mod(4)


def system_from_entries(n, ring, overrides):
    return MultiplierSystem.from_function(n, ring, lambda i, j, k: overrides.get((i, j, k), 1))


def test_all_ones_is_valid():
    assert validate_identities(MultiplierSystem.ones(3, Z)) == []


def test_realize01_output_is_valid():
    pattern = PrincipalPattern.from_partition(3, [[0, 1], [2]])
    assert validate_identities(realize01(pattern)) == []


def test_unit_violation_reported():
    sigma = system_from_entries(2, Z, {(0, 0, 1): 0})
    assert Violation("unit", (0, 0, 1)) in validate_identities(sigma)


def test_shape_mismatch_is_structural():
    with pytest.raises(StructuralError):
        MultiplierSystem(2, Z, [[[1, 1], [1, 1]], [[1, 1]]])
    with pytest.raises(StructuralError):
        MultiplierSystem(2, MOD4, [[[1, 1], [1, 1]], [[1, 1], [1, 7]]])


def test_principal_matrix_examples():
    assert principal_matrix(MultiplierSystem.ones(2, Z)) == ((1, 1), (1, 1))
    sigma = system_from_entries(2, Z, {(0, 1, 0): 0, (1, 0, 1): 0})
    assert principal_matrix(sigma) == ((1, 0), (0, 1))


def test_multiplier_matrix_k():
    sigma = system_from_entries(2, Z, {(0, 1, 0): 0, (1, 0, 1): 0})
    assert multiplier_matrix_k(sigma, 1)[0][0] == 0
    assert all(v == 1 for row in multiplier_matrix_k(MultiplierSystem.ones(3, Z), 2) for v in row)
    with pytest.raises(StructuralError):
        multiplier_matrix_k(sigma, 2)


def test_multiplier_matrix_k_forced_row_and_column(valid01_n3, as_system):
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        for k in range(3):
            m = multiplier_matrix_k(sigma, k)
            assert all(m[k][j] == 1 and m[i][k] == 1 for i in range(3) for j in range(3))


def test_permute_swap_brute_force():
    sigma = system_from_entries(2, Z, {(0, 1, 0): 0, (1, 0, 1): 1})
    swap = Permutation((1, 0))
    out = permute(sigma, swap)
    assert out[0, 1, 0] == 1 and out[1, 0, 1] == 0
    for i, j, k in itertools.product(range(2), repeat=3):
        assert out[i, j, k] == sigma[1 - i, 1 - j, 1 - k]


def test_permute_identity_and_inverse(valid01_n3, as_system):
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        assert permute(sigma, Permutation.identity(3)) == sigma
        for tau in all_permutations(3):
            assert permute(permute(sigma, tau), tau.inverse()) == sigma


def test_permute_length_mismatch():
    with pytest.raises(StructuralError):
        permute(MultiplierSystem.ones(3, Z), Permutation((1, 0)))


def test_permute_is_right_action(valid01_n3, as_system):
    # relabeling by tau o rho is relabeling by tau, then by rho
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        for tau, rho in itertools.product(all_permutations(3), repeat=2):
            assert permute(sigma, tau.compose(rho)) == permute(permute(sigma, tau), rho)


def test_permute_preserves_validity_and_moves_principal(valid01_n3, as_system):
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        for tau in all_permutations(3):
            moved = permute(sigma, tau)
            assert validate_identities(moved) == []
            assert principal_matrix(moved) == permute_matrix(principal_matrix(sigma), tau)
            for k in range(3):
                assert multiplier_matrix_k(moved, k) == permute_matrix(multiplier_matrix_k(sigma, tau(k)), tau)


def test_valid_systems_have_unit_diagonal_and_no_two_of_three(valid01_n3, as_system):
    assert len(valid01_n3) == 22
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        p = principal_matrix(sigma)
        assert all(p[i][i] == 1 for i in range(3))
        assert check_triple_condition(p) == []


def test_classify():
    ones = MultiplierSystem.ones(3, Z)
    assert classify(ones) == (True, False, True)
    pattern = PrincipalPattern.from_partition(4, [[0, 2], [1], [3]])
    assert classify(realize01(pattern)).isK0
    sigma = system_from_entries(2, MOD4, {(0, 1, 0): 2, (1, 0, 1): 2})
    assert classify(sigma, 2) == (False, True, False)


def test_classify_rejects_bad_s():
    with pytest.raises(PreconditionError, match="s\\^2 != 1"):
        classify(MultiplierSystem.ones(2, MOD4), 1)
    with pytest.raises(PreconditionError, match="s\\^2 != s"):
        classify(MultiplierSystem.ones(2, MOD4), 0)
    with pytest.raises(PreconditionError, match="s\\^2 != 1"):
        classify(MultiplierSystem.ones(2, RingSpec.mod(8)), 3)


def test_non_k0_valid_system_exists(valid01_n3, as_system):
    flags = [classify(as_system(s, 3, Z)).isK0 for s in valid01_n3]
    assert sum(flags) == 5


def test_k0_systems_are_determined_by_principal_matrix(valid01_n3, as_system):
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        if classify(sigma).isK0:
            pattern = PrincipalPattern.from_rows(principal_matrix(sigma))
            assert realize01(pattern) == sigma


def test_system_json_round_trip():
    sigma = system_from_entries(2, MOD4, {(0, 1, 0): 2, (1, 0, 1): 2})
    assert MultiplierSystem.from_json(sigma.to_json()) == sigma
    assert Permutation.from_json(Permutation((2, 0, 1)).to_json()) == Permutation((2, 0, 1))


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"n": 2, "ring": {"type": "int"}}, "$"),
        ({"n": 2, "ring": {"type": "mod", "m": 4}, "s": [[[1, 1], [1, 1]], [[1, 1], [1, 9]]]}, "$.s[1][1][1]"),
        ({"n": 2, "ring": {"type": "int"}, "s": [[[1, 1], [1, 1]], [[1, 1]]]}, "$.s[1]"),
        ({"n": 1, "ring": {"type": "int"}, "s": [[[1]]]}, "$.n"),
    ],
)
def test_system_json_errors_carry_paths(doc, path):
    with pytest.raises(SchemaError) as info:
        MultiplierSystem.from_json(doc)
    assert info.value.path == path


def test_permutation_rejects_non_bijection():
    with pytest.raises(StructuralError):
        Permutation((0, 0, 1))
