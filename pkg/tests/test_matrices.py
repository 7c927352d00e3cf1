import random

import pytest

from fmring.errors import StructuralError
from fmring.matrices import FormalMatrix, add, tau_image, twisted_multiply
from fmring.multipliers import MultiplierSystem, Permutation, all_permutations, permute
from fmring.patterns import PrincipalPattern, enumerate_patterns, realize01
from fmring.rings import RingSpec

import oracles

Z = RingSpec.integers()
MOD4 = RingSpec.mod(4)


def m(rows, ring=Z):
    return FormalMatrix.from_rows(rows, ring)


def test_all_ones_is_ordinary_product():
    out = twisted_multiply(m([[1, 2], [3, 4]]), m([[5, 6], [7, 8]]), MultiplierSystem.ones(2, Z))
    assert out == m([[19, 22], [43, 50]])


def test_zero_multiplier_kills_product():
    sigma = realize01(PrincipalPattern.from_rows([[1, 0], [0, 1]]))
    e01, e10 = FormalMatrix.unit(2, Z, 0, 1), FormalMatrix.unit(2, Z, 1, 0)
    assert twisted_multiply(e01, e10, sigma) == FormalMatrix.zero(2, Z)
    assert twisted_multiply(e10, e01, sigma) == FormalMatrix.zero(2, Z)


def test_identity_is_two_sided(valid01_n3, as_system):
    rng = random.Random(1)
    for s in valid01_n3:
        sigma = as_system(s, 3, Z)
        one = FormalMatrix.identity(3, Z)
        for _ in range(5):
            a = FormalMatrix.random(3, Z, rng)
            assert twisted_multiply(one, a, sigma) == a == twisted_multiply(a, one, sigma)


def test_matches_naive_sum():
    rng = random.Random(2)
    for ring in (Z, MOD4, RingSpec.mod(6)):
        for pattern in enumerate_patterns(4, 0, ring):
            sigma = realize01(pattern)
            a, b = FormalMatrix.random(4, ring, rng), FormalMatrix.random(4, ring, rng)
            expected = oracles.naive_product(a.entries, b.entries, sigma.s, 4, ring.modulus)
            assert [list(r) for r in twisted_multiply(a, b, sigma).entries] == expected


def test_add_examples():
    a = m([[1, 2], [3, 0]], MOD4)
    assert add(a, FormalMatrix.zero(2, MOD4)) == a
    assert add(m([[1, 2], [3, 4]], MOD4), m([[3, 2], [1, 0]], MOD4)) == FormalMatrix.zero(2, MOD4)
    assert a + (-a) == FormalMatrix.zero(2, MOD4)


def test_mismatches_raise():
    with pytest.raises(StructuralError):
        add(FormalMatrix.zero(2, Z), FormalMatrix.zero(3, Z))
    with pytest.raises(StructuralError):
        add(FormalMatrix.zero(2, Z), FormalMatrix.zero(2, MOD4))
    with pytest.raises(StructuralError):
        twisted_multiply(FormalMatrix.zero(2, Z), FormalMatrix.zero(2, Z), MultiplierSystem.ones(3, Z))
    with pytest.raises(StructuralError):
        tau_image(FormalMatrix.zero(2, Z), Permutation((0, 1, 2)))


def test_tau_image_examples():
    a = m([[1, 2], [3, 4]])
    assert tau_image(a, Permutation.identity(2)) == a
    assert tau_image(a, Permutation((1, 0))) == m([[4, 3], [2, 1]])
    tau = Permutation((2, 0, 1))
    b = FormalMatrix.random(3, Z, random.Random(3))
    assert tau_image(tau_image(b, tau), tau.inverse()) == b


def test_tau_image_is_additive():
    rng = random.Random(4)
    for tau in all_permutations(3):
        a, b = FormalMatrix.random(3, MOD4, rng), FormalMatrix.random(3, MOD4, rng)
        assert tau_image(a + b, tau) == tau_image(a, tau) + tau_image(b, tau)


def test_tau_image_pairs_with_same_tau_in_permute():
    # A -> tau A carries products over sigma to products over permute(sigma, tau)
    rng = random.Random(5)
    pattern = PrincipalPattern.from_partition(4, [[0, 3], [1], [2]], MOD4)
    sigma = realize01(pattern)
    for tau in all_permutations(4):
        moved = permute(sigma, tau)
        a, b = FormalMatrix.random(4, MOD4, rng), FormalMatrix.random(4, MOD4, rng)
        lhs = tau_image(twisted_multiply(a, b, sigma), tau)
        assert lhs == twisted_multiply(tau_image(a, tau), tau_image(b, tau), moved)


def test_matrix_json_round_trip():
    a = m([[1, 2], [3, 0]], MOD4)
    assert FormalMatrix.from_json(a.to_json()) == a
