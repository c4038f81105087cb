"""Spectra and transition amplitudes H(t) = exp(iAt) of cubelike graphs.

Amplitudes use the character formula
``H(t)_{0,u} = 2^-d sum_a (-1)^{a.u} exp(i t lambda_a)`` evaluated with one
fast Walsh-Hadamard transform; the projectors are never built. The dense
oracle multiplies the commuting factors ``cos(t) I + i sin(t) P_c`` instead
and is only meant for checking.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, pi

import numpy as np

from .gf2core import (
    MAX_DIM,
    ConnectionSet,
    DimensionError,
    check_vector,
    eigenvalue_array,
    fwht,
    weight_distribution,
)

ORACLE_MAX_DIM = 6


def default_tol(dim: int) -> float:
    """Rounding budget of the transform: ~d 2^{d/2} eps."""
    return 1e-9 if dim <= 12 else 1e-8


@dataclass(frozen=True)
class RationalPi:
    """The time p*pi/q, kept exact until the final exponential."""

    p: int
    q: int = 1

    def __post_init__(self) -> None:
        p, q = int(self.p), int(self.q)
        if q == 0:
            raise ValueError("denominator must be nonzero")
        if q < 0:
            p, q = -p, -q
        g = gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    _PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "RationalPi":
        """Parse ``"p/q"`` or ``"p"`` (meaning p*pi)."""
        match = cls._PATTERN.match(text)
        if not match:
            raise ValueError(f"time must look like 'p/q' (a multiple of pi), got {text!r}")
        q = int(match.group(2)) if match.group(2) is not None else 1
        if q == 0:
            raise ValueError("denominator must be nonzero")
        return cls(int(match.group(1)), q)

    @classmethod
    def from_fraction(cls, frac: Fraction) -> "RationalPi":
        return cls(frac.numerator, frac.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __float__(self) -> float:
        return self.p * pi / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}·π"

    def phases(self, n) -> np.ndarray:
        """exp(i * t * n) for integer n, reducing p*n mod 2q before going to floats."""
        n = np.asarray(n, dtype=np.int64)
        r = np.mod(self.p * n, 2 * self.q)
        return np.exp(1j * pi * r.astype(np.float64) / self.q)

    def phase(self, n: int) -> complex:
        return complex(self.phases(np.array([n]))[0])


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[tuple[int, int], ...]
    m: int

    @property
    def eigenvalues(self) -> list[int]:
        return [lam for lam, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [mult for _, mult in self.entries]


@dataclass(frozen=True)
class AmplitudeVector:
    dim: int
    t: RationalPi
    values: np.ndarray

    def __getitem__(self, u: int) -> complex:
        return complex(self.values[u])

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def spectrum(C: ConnectionSet) -> Spectrum:
    """Eigenvalue m - 2k with multiplicity W_k, sorted descending."""
    dist = weight_distribution(C)
    entries = sorted(((C.m - 2 * k, n) for k, n in dist.counts.items()), reverse=True)
    return Spectrum(tuple(entries), C.m)


def _as_time(t) -> RationalPi:
    if isinstance(t, RationalPi):
        return t
    if isinstance(t, Fraction):
        return RationalPi.from_fraction(t)
    if isinstance(t, str):
        return RationalPi.parse(t)
    raise TypeError("times are rational multiples of pi: pass RationalPi, Fraction or 'p/q'")


def _check_cap(C: ConnectionSet) -> None:
    if C.dim > MAX_DIM:
        raise DimensionError(f"dim {C.dim} exceeds the amplitude cap {MAX_DIM}")


def amplitude_row(C: ConnectionSet, t) -> AmplitudeVector:
    """Row 0 of H(t); by vertex transitivity H(t)_{u,v} is entry u ^ v."""
    t = _as_time(t)
    _check_cap(C)
    f = t.phases(eigenvalue_array(C))
    values = fwht(f) / float(1 << C.dim)
    return AmplitudeVector(C.dim, t, values)


def _parities(dim: int, w: int) -> np.ndarray:
    a = np.arange(1 << dim, dtype=np.uint32)
    return np.bitwise_count(a & np.uint32(w)) & 1


def amplitude_entry(C: ConnectionSet, t, u: int, v: int) -> complex:
    """Single entry H(t)_{u,v} by direct O(2^d) summation."""
    t = _as_time(t)
    _check_cap(C)
    u = check_vector(u, C.dim)
    v = check_vector(v, C.dim)
    f = t.phases(eigenvalue_array(C))
    signs = 1 - 2 * _parities(C.dim, u ^ v).astype(np.float64)
    return complex(np.dot(signs, f) / float(1 << C.dim))


def trace(C: ConnectionSet, t) -> complex:
    """tr H(t) = sum over the spectrum of mult * exp(i t lambda)."""
    t = _as_time(t)
    spec = spectrum(C)
    lams = np.array(spec.eigenvalues, dtype=np.int64)
    mults = np.array(spec.multiplicities, dtype=np.float64)
    return complex(np.dot(mults, t.phases(lams)))


def permutation_matrix(dim: int, c: int) -> np.ndarray:
    """P_c for the translation x -> x + c."""
    n = 1 << dim
    x = np.arange(n)
    P = np.zeros((n, n))
    P[x, x ^ c] = 1.0
    return P


def dense_oracle(C: ConnectionSet, t) -> np.ndarray:
    """Full H(t) as the product of cos(t) I + i sin(t) P_c over c in C."""
    t = _as_time(t)
    if C.dim > ORACLE_MAX_DIM:
        raise DimensionError(f"dense oracle is limited to dim <= {ORACLE_MAX_DIM}")
    # cos and sin from the reduced angle, as in RationalPi.phases
    z = t.phase(1)
    cos_t, sin_t = z.real, z.imag
    n = 1 << C.dim
    H = np.eye(n, dtype=np.complex128)
    for c in C.elements:
        H = H @ (cos_t * np.eye(n) + 1j * sin_t * permutation_matrix(C.dim, c))
    return H
