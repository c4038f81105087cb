import itertools
from fractions import Fraction
from math import comb, pi

import numpy as np
import pytest

from cubepst import ConnectionSet, hypercube
from cubepst.gf2core import DimensionError, bits_to_int, sigma
from cubepst.walkengine import (
    RationalPi,
    amplitude_entry,
    amplitude_row,
    dense_oracle,
    spectrum,
    trace,
)

from conftest import all_dim3_sets
from oracles import expm_transition, random_connection_sets

TIMES = [RationalPi(1, 6), RationalPi(1, 4), RationalPi(1, 2), RationalPi(1, 1)]


def test_rational_pi():
    assert RationalPi(2, 8) == RationalPi(1, 4)
    assert RationalPi(1, -2) == RationalPi(-1, 2)
    assert RationalPi.parse("3/6") == RationalPi(1, 2)
    assert RationalPi.parse("1") == RationalPi(1, 1)
    assert str(RationalPi(1, 4)) == "1/4·π"
    assert float(RationalPi(1, 4)) == pytest.approx(pi / 4)
    for bad in ("0.25", "1/0", "pi/4", ""):
        with pytest.raises(ValueError):
            RationalPi.parse(bad)


def test_phase_reduction_is_exact_for_large_arguments():
    t = RationalPi(1, 4)
    assert t.phase(8 * 10**12 + 2) == pytest.approx(1j, abs=1e-15)


def test_spectrum_examples(example, k2):
    assert spectrum(example).entries == ((11, 1), (3, 10), (-1, 16), (-5, 5))
    assert spectrum(k2).entries == ((1, 1), (-1, 1))
    for d in range(1, 7):
        assert spectrum(hypercube(d)).entries == tuple((d - 2 * k, comb(d, k)) for k in range(d + 1))


def test_spectrum_invariants(rng):
    for d, els in random_connection_sets(rng, [1, 2, 3, 4, 5, 6], 50):
        spec = spectrum(ConnectionSet.from_elements(d, els))
        assert sum(spec.multiplicities) == 1 << d
        assert spec.entries[0][0] == len(els)
        assert all((len(els) - lam) % 2 == 0 for lam in spec.eigenvalues)


def test_amplitude_row_examples(example, k2):
    np.testing.assert_allclose(amplitude_row(k2, RationalPi(1, 2)).values, [0, 1j], atol=1e-15)
    for C in (example, hypercube(4)):
        row = amplitude_row(C, RationalPi(0)).values
        expected = np.zeros(1 << C.dim)
        expected[0] = 1
        np.testing.assert_allclose(row, expected, atol=1e-15)
    mods = np.abs(amplitude_row(example, RationalPi(1, 4)).values)
    e5 = bits_to_int("00001")
    assert abs(mods[e5] - 1) < 1e-9
    assert np.delete(mods, e5).max() < 1e-9


def test_amplitude_entry_examples(example, k2):
    assert amplitude_entry(k2, RationalPi(1), 0, 0) == pytest.approx(-1, abs=1e-15)
    assert abs(amplitude_entry(hypercube(2), RationalPi(1, 2), 0, 0b11)) == pytest.approx(1, abs=1e-15)
    t = RationalPi(1, 3)
    diag = amplitude_entry(example, t, 0, 0)
    for u in range(32):
        assert amplitude_entry(example, t, u, u) == pytest.approx(diag, abs=1e-14)
    row = amplitude_row(example, t).values
    for u, v in itertools.product(range(0, 32, 5), range(0, 32, 3)):
        assert amplitude_entry(example, t, u, v) == pytest.approx(row[u ^ v], abs=1e-13)
    with pytest.raises(DimensionError):
        amplitude_entry(example, t, 0, 32)


def test_trace_examples(example, k2):
    for C in (example, k2, hypercube(5)):
        assert trace(C, RationalPi(0)) == pytest.approx(1 << C.dim)
    assert trace(k2, RationalPi(1)) == pytest.approx(-2, abs=1e-14)
    assert trace(example, RationalPi(1, 2)) == pytest.approx(-32j, abs=1e-12)


def test_dense_oracle_examples(example, k2):
    np.testing.assert_allclose(dense_oracle(k2, RationalPi(1, 2)), [[0, 1j], [1j, 0]], atol=1e-15)
    np.testing.assert_allclose(dense_oracle(example, RationalPi(0)), np.eye(32), atol=0)
    t = RationalPi(1, 4)
    np.testing.assert_allclose(dense_oracle(example, t)[0], amplitude_row(example, t).values, atol=1e-12)
    with pytest.raises(DimensionError):
        dense_oracle(hypercube(7), t)


def test_transform_matches_scipy_expm(rng):
    # independent of both the product formula and the transform
    for d, els in random_connection_sets(rng, [1, 2, 3, 4, 5], 40):
        C = ConnectionSet.from_elements(d, els)
        t = RationalPi(int(rng.integers(-7, 8)), int(rng.integers(1, 9)))
        H = expm_transition(els, d, float(t))
        np.testing.assert_allclose(amplitude_row(C, t).values, H[0], atol=1e-10)


# standing invariants


def test_unitarity(rng):
    for d, els in random_connection_sets(rng, list(range(1, 11)), 60):
        C = ConnectionSet.from_elements(d, els)
        t = RationalPi(int(rng.integers(-50, 51)), int(rng.integers(1, 40)))
        assert amplitude_row(C, t).norm2() == pytest.approx(1, abs=1e-10)


def test_oracle_equivalence_small_dims(rng):
    sets = [ConnectionSet(1, (1,))]
    sets += [ConnectionSet(2, c) for r in (1, 2, 3) for c in itertools.combinations((1, 2, 3), r)]
    sets += all_dim3_sets()
    sets += [ConnectionSet.from_elements(d, els) for d, els in random_connection_sets(rng, [4], 300)]
    worst = 0.0
    for C in sets:
        for t in TIMES:
            err = np.abs(dense_oracle(C, t)[0] - amplitude_row(C, t).values).max()
            worst = max(worst, err)
    assert worst <= 1e-12


def test_half_pi_is_permutation_times_phase(rng):
    for d, els in random_connection_sets(rng, list(range(1, 11)), 80):
        C = ConnectionSet.from_elements(d, els)
        row = amplitude_row(C, RationalPi(1, 2)).values
        expected = np.zeros(1 << d, dtype=complex)
        expected[sigma(C)] = 1j ** C.m
        np.testing.assert_allclose(row, expected, atol=1e-10)


def test_trace_equals_scaled_diagonal(rng):
    for d, els in random_connection_sets(rng, list(range(1, 11)), 60):
        C = ConnectionSet.from_elements(d, els)
        t = RationalPi.from_fraction(Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 17))))
        assert trace(C, t) == pytest.approx((1 << d) * amplitude_entry(C, t, 0, 0), abs=1e-12)
