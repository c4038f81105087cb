"""Bit-packed arithmetic over Z_2^d, connection sets and their codes.

Vectors of Z_2^d are plain Python ints. Bit ``i`` (0-based) holds coordinate
``i + 1``, i.e. row ``i + 1`` of the generator matrix ``M`` whose columns are
the connection-set elements, and the integer itself is the vertex index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator

import numpy as np

# 2^24 complex128 values is 256 MiB; amplitude arrays stop there.
MAX_DIM = 24
# Per-vector code operations only touch d*m bits.
MAX_CODE_DIM = 32


class DimensionError(ValueError):
    """A vector or set does not fit the requested dimension or cap."""


class ProjectivityError(ValueError):
    """A connection set has a zero or repeated element."""


def popcount(x: int) -> int:
    return int(x).bit_count()


def bits_to_int(s: str) -> int:
    """Parse a bit string; the leftmost character is coordinate 1 (the LSB)."""
    s = s.strip()
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def int_to_bits(x: int, dim: int) -> str:
    """Inverse of :func:`bits_to_int` for a fixed dimension."""
    check_vector(x, dim)
    return "".join("1" if (x >> i) & 1 else "0" for i in range(dim))


def unit(i: int, dim: int) -> int:
    """Standard basis vector e_i, 1-based as in the matrix rows."""
    if not 1 <= i <= dim:
        raise DimensionError(f"e_{i} does not exist in dimension {dim}")
    return 1 << (i - 1)


def check_vector(x: int, dim: int) -> int:
    if not isinstance(x, (int, np.integer)) or isinstance(x, bool):
        raise TypeError(f"vectors are integers, got {type(x).__name__}")
    x = int(x)
    if x < 0 or x >> dim:
        raise DimensionError(f"vector {x} does not lie in Z_2^{dim}")
    return x


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along a length-2^d axis.

    ``out[u] = sum_a (-1)^{popcount(a & u)} values[a]``. Returns a new array.
    """
    out = np.array(values, copy=True)
    n = out.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        view = out.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = lo - view[:, 1, :]
        h *= 2
    return out


@dataclass(frozen=True)
class ConnectionSet:
    """Distinct nonzero vectors of Z_2^dim; the columns of ``M`` in order."""

    dim: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= MAX_CODE_DIM:
            raise DimensionError(f"dim must lie in [1, {MAX_CODE_DIM}], got {self.dim}")
        elements = tuple(check_vector(c, self.dim) for c in self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValueError("a connection set needs at least one element")
        if 0 in elements:
            raise ProjectivityError("zero vector in connection set")
        if len(set(elements)) != len(elements):
            raise ProjectivityError("repeated element in connection set")

    @classmethod
    def from_elements(
        cls, dim: int, elements: Iterable[int], keep_order: bool = False
    ) -> "ConnectionSet":
        elements = list(elements)
        if not keep_order:
            elements.sort()
        return cls(dim, tuple(elements))

    @classmethod
    def from_matrix(cls, rows, keep_order: bool = False) -> "ConnectionSet":
        """Build from a d x m 0/1 matrix, rows indexed by coordinate."""
        mat = np.asarray(rows, dtype=np.int64)
        if mat.ndim != 2 or mat.shape[0] == 0:
            raise ValueError("expected a non-empty 2-d 0/1 matrix")
        if np.any((mat != 0) & (mat != 1)):
            raise ValueError("matrix entries must be 0 or 1")
        weights = 1 << np.arange(mat.shape[0], dtype=np.int64)
        cols = (mat * weights[:, None]).sum(axis=0)
        return cls.from_elements(mat.shape[0], (int(c) for c in cols), keep_order)

    @property
    def m(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def mask(self) -> int:
        """Subset of Z_2^dim \\ {0} as a bitmask; element c sits at bit c - 1."""
        out = 0
        for c in self.elements:
            out |= 1 << (c - 1)
        return out

    def matrix(self) -> np.ndarray:
        """The d x m generator matrix ``M`` as uint8."""
        cols = np.array(self.elements, dtype=np.int64)
        return ((cols[None, :] >> np.arange(self.dim)[:, None]) & 1).astype(np.uint8)

    def row_weights(self) -> list[int]:
        return [sum((c >> i) & 1 for c in self.elements) for i in range(self.dim)]

    def toggled(self, v: int) -> "ConnectionSet":
        """Symmetric difference with {v}, keeping the current order."""
        v = check_vector(v, self.dim)
        if v == 0:
            raise ProjectivityError("cannot toggle the zero vector")
        if v in self.elements:
            return ConnectionSet(self.dim, tuple(c for c in self.elements if c != v))
        return ConnectionSet(self.dim, self.elements + (v,))

    def same_set(self, other: "ConnectionSet") -> bool:
        return self.dim == other.dim and set(self.elements) == set(other.elements)


@dataclass(frozen=True)
class WeightDistribution:
    m: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def enumerator(self) -> str:
        """Weight enumerator as text, e.g. ``x^11 + 10x^7y^4``."""
        terms = []
        for k, n in sorted(self.counts.items()):
            mono = "".join(
                f"{var}^{e}" if e > 1 else var
                for var, e in (("x", self.m - k), ("y", k))
                if e
            )
            terms.append(f"{n if n != 1 or not mono else ''}{mono or ''}")
        return " + ".join(terms)


def _check_same_dim(C: ConnectionSet, a: int) -> int:
    try:
        return check_vector(a, C.dim)
    except DimensionError as exc:
        raise DimensionError(f"vector does not match set dimension {C.dim}") from exc


def codeword(C: ConnectionSet, a: int) -> list[int]:
    """The word a^T M: entry j is the parity of a . c_j."""
    a = _check_same_dim(C, a)
    return [popcount(a & c) & 1 for c in C.elements]


def codeword_weight(C: ConnectionSet, a: int) -> int:
    a = _check_same_dim(C, a)
    return sum(popcount(a & c) & 1 for c in C.elements)


@lru_cache(maxsize=64)
def _eigen_cached(C: ConnectionSet) -> np.ndarray:
    indicator = np.zeros(1 << C.dim, dtype=np.int64)
    indicator[list(C.elements)] = 1
    lam = fwht(indicator)
    lam.setflags(write=False)
    return lam


def eigenvalue_array(C: ConnectionSet) -> np.ndarray:
    """lambda_a = sum_c (-1)^{a . c} = m - 2 wt(a^T M) for every a (read-only)."""
    if C.dim > MAX_DIM:
        raise DimensionError(f"dim {C.dim} exceeds the array cap {MAX_DIM}")
    return _eigen_cached(C)


def weights_array(C: ConnectionSet) -> np.ndarray:
    """wt(a^T M) for every a in Z_2^dim, indexed by a."""
    return (C.m - eigenvalue_array(C)) // 2


def weight_distribution(C: ConnectionSet) -> WeightDistribution:
    """Counts over all 2^dim vectors a, so rank-deficient sets get multiplicities."""
    ks, ns = np.unique(weights_array(C), return_counts=True)
    return WeightDistribution(C.m, {int(k): int(n) for k, n in zip(ks, ns)})


def divisor(C: ConnectionSet) -> int:
    """gcd of the nonzero codeword weights."""
    nonzero = [k for k in weight_distribution(C).counts if k]
    assert nonzero, "distinct nonzero columns always give a nonzero codeword"
    out = 0
    for k in nonzero:
        out = gcd(out, k)
    return out


def sigma(C: ConnectionSet) -> int:
    out = 0
    for c in C.elements:
        out ^= c
    return out


def rank(vectors: Iterable[int]) -> int:
    """GF(2) rank of integer-packed vectors."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def spans(C: ConnectionSet) -> bool:
    return rank(C.elements) == C.dim
