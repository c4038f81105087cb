"""Named cubelike graphs and operations on connection sets."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .gf2core import MAX_DIM, ConnectionSet, DimensionError, check_vector, sigma

# The 5 x 11 generator matrix of the smallest even, not doubly even,
# self-orthogonal example on 32 vertices (rows are coordinates 1..5).
EXAMPLE_MATRIX = (
    (0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1),
    (0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1),
    (0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1),
    (1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1),
)


class Provenance(str, enum.Enum):
    HYPERCUBE = "hypercube"
    PAPER_EXAMPLE = "paper_example"
    COMPLEMENT = "complement"
    DIRECT_SUM = "direct_sum"
    CUSTOM = "custom"


@dataclass(frozen=True)
class NamedGraph:
    name: str
    connection_set: ConnectionSet
    provenance: Provenance = Provenance.CUSTOM


def hypercube(d: int) -> ConnectionSet:
    if not 1 <= d <= MAX_DIM:
        raise DimensionError(f"hypercube dimension must lie in [1, {MAX_DIM}]")
    return ConnectionSet(d, tuple(1 << i for i in range(d)))


def example_graph() -> ConnectionSet:
    """The 11-regular graph on 32 vertices, columns kept in display order."""
    return ConnectionSet.from_matrix(EXAMPLE_MATRIX, keep_order=True)


def pst_to_target(C: ConnectionSet, u: int) -> ConnectionSet:
    """Change at most two elements of C so that the elements sum to u.

    The result then has PST from 0 to u at time pi/2.
    """
    u = check_vector(u, C.dim)
    if u == 0:
        raise ValueError("target must be nonzero")
    s = sigma(C)
    if s == u:
        return C
    members = list(C.elements)
    for v in ((u,) if s == 0 else (s, u)):
        if v in members:
            members.remove(v)
        else:
            members.append(v)
    if not members:
        raise ValueError("modification left an empty connection set")
    return ConnectionSet(C.dim, tuple(members))


def complement(C: ConnectionSet) -> ConnectionSet:
    """(Z_2^d \\ {0}) \\ C, the connection set of the complementary graph."""
    if C.dim < 2:
        raise DimensionError("complement needs dim >= 2")
    if C.dim > MAX_DIM:
        raise DimensionError(f"complement is limited to dim <= {MAX_DIM}")
    present = set(C.elements)
    rest = tuple(v for v in range(1, 1 << C.dim) if v not in present)
    if not rest:
        raise ValueError("complement of the complete graph is empty")
    return ConnectionSet(C.dim, rest)


def direct_sum(C1: ConnectionSet, C2: ConnectionSet) -> ConnectionSet:
    """Block-diagonal generator matrix; C1 occupies the low coordinates.

    The resulting graph is the Cartesian product of the two graphs.
    """
    shift = C1.dim
    elements = C1.elements + tuple(c << shift for c in C2.elements)
    return ConnectionSet(C1.dim + C2.dim, elements)


def power(C: ConnectionSet, k: int) -> ConnectionSet:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k * C.dim > MAX_DIM:
        raise DimensionError(f"{k} copies of dim {C.dim} exceed the cap {MAX_DIM}")
    out = C
    for _ in range(k - 1):
        out = direct_sum(out, C)
    return out


def simplex(d: int) -> ConnectionSet:
    """All nonzero vectors of Z_2^d (the complete graph K_{2^d})."""
    if not 1 <= d <= MAX_DIM:
        raise DimensionError(f"dimension must lie in [1, {MAX_DIM}]")
    return ConnectionSet(d, tuple(range(1, 1 << d)))


def named(name: str) -> NamedGraph:
    """Look up ``example``, ``cube<d>``, ``simplex<d>`` or ``k2``."""
    key = name.strip().lower()
    if key == "example":
        return NamedGraph("example", example_graph(), Provenance.PAPER_EXAMPLE)
    if key == "k2":
        return NamedGraph("k2", hypercube(1), Provenance.HYPERCUBE)
    for prefix, build, prov in (
        ("cube", hypercube, Provenance.HYPERCUBE),
        ("simplex", simplex, Provenance.CUSTOM),
    ):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return NamedGraph(key, build(int(key[len(prefix):])), prov)
    raise KeyError(f"unknown graph name {name!r}")
