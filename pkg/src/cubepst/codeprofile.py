"""Classification of the code of a cubelike graph."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf2core import ConnectionSet, divisor, sigma, spans


@dataclass(frozen=True)
class CodeProfile:
    dim: int
    m: int
    divisor: int
    row_gcd: int
    center: int
    sigma: int
    even: bool
    doubly_even: bool
    self_orthogonal: bool
    spanning: bool

    @property
    def divisor_divides_row_gcd(self) -> bool:
        # measured, never assumed
        return self.row_gcd % self.divisor == 0


def self_orthogonal(C: ConnectionSet) -> bool:
    """All row pairs of M (diagonal included) have even integer dot product."""
    cols = C.elements
    for i in range(C.dim):
        for j in range(i, C.dim):
            both = (1 << i) | (1 << j)
            if sum(1 for c in cols if c & both == both) & 1:
                return False
    return True


def row_gcd(C: ConnectionSet) -> int:
    out = 0
    for w in C.row_weights():
        out = gcd(out, w)
    return out


def center(C: ConnectionSet) -> int:
    """Coordinate i is (row weight i / gcd of row weights) mod 2; never zero."""
    weights = C.row_weights()
    g = row_gcd(C)
    out = 0
    for i, w in enumerate(weights):
        if (w // g) & 1:
            out |= 1 << i
    assert out, "row weights divided by their gcd cannot all be even"
    return out


def classify(C: ConnectionSet) -> CodeProfile:
    D = divisor(C)
    return CodeProfile(
        dim=C.dim,
        m=C.m,
        divisor=D,
        row_gcd=row_gcd(C),
        center=center(C),
        sigma=sigma(C),
        even=D % 2 == 0,
        doubly_even=D % 4 == 0,
        self_orthogonal=self_orthogonal(C),
        spanning=spans(C),
    )
