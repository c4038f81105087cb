from math import comb, gcd

import numpy as np
import pytest

from cubepst import ConnectionSet, hypercube
from cubepst.gf2core import (
    DimensionError,
    ProjectivityError,
    bits_to_int,
    codeword,
    codeword_weight,
    divisor,
    fwht,
    int_to_bits,
    sigma,
    spans,
    unit,
    weight_distribution,
)

from oracles import brute_distribution, random_connection_sets


def test_codeword_examples(example):
    assert codeword(example, 0) == [0] * 11
    assert codeword(example, unit(5, 5)) == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert codeword(hypercube(3), bits_to_int("011")) == [0, 1, 1]


def test_codeword_weight_examples(example):
    assert codeword_weight(example, unit(5, 5)) == 6
    assert codeword_weight(example, unit(1, 5)) == 4
    assert codeword_weight(example, 0) == 0


def test_dimension_mismatch(example):
    with pytest.raises(DimensionError):
        codeword(example, 1 << 5)
    with pytest.raises(DimensionError):
        codeword_weight(hypercube(2), 4)


def test_weight_distribution_examples(example, simplex3):
    assert weight_distribution(example).counts == {0: 1, 4: 10, 6: 16, 8: 5}
    assert weight_distribution(simplex3).counts == {0: 1, 4: 7}
    for d in range(1, 9):
        assert weight_distribution(hypercube(d)).counts == {k: comb(d, k) for k in range(d + 1)}


def test_enumerator_text(example):
    assert weight_distribution(example).enumerator() == "x^11 + 10x^7y^4 + 16x^5y^6 + 5x^3y^8"


def test_weight_distribution_matches_brute_force(rng):
    for d, els in random_connection_sets(rng, [1, 2, 3, 4, 5, 6, 7], 150):
        C = ConnectionSet.from_elements(d, els)
        dist = weight_distribution(C)
        assert dist.counts == brute_distribution(els, d)
        assert dist.total == 1 << d


def test_divisor_examples(example, simplex3):
    assert divisor(example) == 2
    assert divisor(simplex3) == 4
    for d in range(1, 7):
        assert divisor(hypercube(d)) == 1


def test_sigma_examples(example):
    assert sigma(hypercube(2)) == bits_to_int("11")
    assert sigma(example) == 0
    assert sigma(ConnectionSet(4, (bits_to_int("0110"),))) == bits_to_int("0110")


def test_spans_examples(example):
    assert spans(hypercube(4))
    assert not spans(ConnectionSet(3, (1, 2)))
    assert spans(example)


def test_bit_order():
    assert bits_to_int("00001") == 16
    assert bits_to_int("10000") == 1
    assert int_to_bits(16, 5) == "00001"
    for x in range(64):
        assert bits_to_int(int_to_bits(x, 6)) == x


def test_example_first_column_is_e5(example):
    assert example.elements[0] == bits_to_int("00001")
    assert example.m == 11 and example.dim == 5


def test_connection_set_validation():
    with pytest.raises(ProjectivityError):
        ConnectionSet(3, (1, 2, 1))
    with pytest.raises(ProjectivityError):
        ConnectionSet(3, (0, 1))
    with pytest.raises(DimensionError):
        ConnectionSet(2, (4,))
    with pytest.raises(ValueError):
        ConnectionSet(2, ())


def test_sorted_by_default():
    assert ConnectionSet.from_elements(3, [5, 1, 3]).elements == (1, 3, 5)
    assert ConnectionSet.from_elements(3, [5, 1, 3], keep_order=True).elements == (5, 1, 3)


def test_fwht_against_hadamard_matrix(rng):
    for d in range(0, 7):
        n = 1 << d
        H = np.array([[(-1) ** bin(a & u).count("1") for a in range(n)] for u in range(n)])
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        np.testing.assert_allclose(fwht(x), H @ x, atol=1e-12)


# invariants


def test_linearity(rng):
    for d, els in random_connection_sets(rng, [2, 3, 4, 5, 6], 60):
        C = ConnectionSet.from_elements(d, els)
        for _ in range(10):
            a, b = (int(v) for v in rng.integers(0, 1 << d, size=2))
            left = codeword(C, a ^ b)
            right = [x ^ y for x, y in zip(codeword(C, a), codeword(C, b))]
            assert left == right


def test_weight_of_sum_identity(rng):
    for d, els in random_connection_sets(rng, [2, 3, 4, 5, 6], 60):
        C = ConnectionSet.from_elements(d, els)
        for _ in range(10):
            a, b = (int(v) for v in rng.integers(0, 1 << d, size=2))
            x, y = codeword(C, a), codeword(C, b)
            inter = sum(p & q for p, q in zip(x, y))
            assert codeword_weight(C, a ^ b) == sum(x) + sum(y) - 2 * inter


def test_divisor_divides_all_weights_and_sigma_bits(rng):
    for d, els in random_connection_sets(rng, [1, 2, 3, 4, 5, 6, 7, 8], 100):
        C = ConnectionSet.from_elements(d, els)
        D = divisor(C)
        dist = weight_distribution(C)
        assert sum(dist.counts.values()) == 1 << d
        assert dist.counts[0] >= 1
        assert all(k % D == 0 for k in dist.counts)
        g = 0
        for k in dist.counts:
            g = gcd(g, k)
        assert g == D
        s = sigma(C)
        for i in range(1, d + 1):
            assert (s >> (i - 1)) & 1 == codeword_weight(C, unit(i, d)) % 2
