"""Census of self-orthogonal connection sets up to GL(d, 2) equivalence.

The scan walks subsets of Z_2^d \\ {0} in Gray-code order. Toggling one
element changes the parities of the pair counts
``n_ij = #{c in C : c_i = c_j = 1}`` by a fixed mask, so self-orthogonality
(all ``n_ij`` even) is a single XOR and compare per step. Sets are stored as
bitmasks with element ``c`` at bit ``c - 1``.

For d >= 3 the full set is itself self-orthogonal, so complements of
survivors survive as well; the scan then covers only subsets missing the
largest vector and adds the complements afterwards.
"""

from __future__ import annotations

import enum
import logging
import os
import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path

import numba
import numpy as np

from .gf2core import ConnectionSet, DimensionError

log = logging.getLogger(__name__)

CENSUS_MAX_DIM = 5
CANONICAL_MAX_DIM = 5


class Constraint(str, enum.Enum):
    EVEN_SO = "even_not_doubly_even_self_orth"
    DOUBLY_EVEN = "doubly_even"

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        aliases = {
            "even-so": cls.EVEN_SO,
            "even_so": cls.EVEN_SO,
            "doubly-even": cls.DOUBLY_EVEN,
        }
        key = text.strip().lower()
        if key in aliases:
            return aliases[key]
        return cls(key)

    def accepts(self, D: np.ndarray) -> np.ndarray:
        if self is Constraint.EVEN_SO:
            return D % 4 == 2
        return D % 4 == 0


class OrbitClosureError(RuntimeError):
    """An orbit left the survivor set, so the predicate is not GL-invariant."""


class BudgetExceeded(RuntimeError):
    """The scan ran out of time; progress is in the checkpoint."""


# --------------------------------------------------------------------------
# incremental predicate state (reference implementation, also used in tests)


class SurvivorPredicateState:
    """Pair counts n_ij and codeword weights w_a, updated one toggle at a time."""

    def __init__(self, dim: int):
        self.dim = dim
        self.members: set[int] = set()
        self.pair_counts = np.zeros((dim, dim), dtype=np.int64)
        self.weights = np.zeros(1 << dim, dtype=np.int64)
        a = np.arange(1 << dim, dtype=np.uint32)
        self._dot = {
            c: (np.bitwise_count(a & np.uint32(c)) & 1).astype(bool) for c in range(1, 1 << dim)
        }

    @classmethod
    def from_scratch(cls, dim: int, elements) -> "SurvivorPredicateState":
        state = cls(dim)
        state.members = set(elements)
        for c in state.members:
            bits = [i for i in range(dim) if (c >> i) & 1]
            for i in bits:
                for j in bits:
                    if i <= j:
                        state.pair_counts[i, j] += 1
            state.weights[state._dot[c]] += 1
        return state

    def toggle(self, c: int) -> None:
        step = -1 if c in self.members else 1
        if step > 0:
            self.members.add(c)
        else:
            self.members.remove(c)
        bits = [i for i in range(self.dim) if (c >> i) & 1]
        for k, i in enumerate(bits):
            for j in bits[k:]:
                self.pair_counts[i, j] += step
        self.weights[self._dot[c]] += step

    def self_orthogonal(self) -> bool:
        return not np.any(np.triu(self.pair_counts) % 2)

    def spanning(self) -> bool:
        return bool(np.all(self.weights[1:] > 0))

    def divisor(self) -> int:
        out = 0
        for w in self.weights[1:]:
            out = gcd(out, int(w))
        return out


# --------------------------------------------------------------------------
# Gray-code scan


def pair_parity_masks(dim: int) -> np.ndarray:
    """For each element c (index c - 1), the set of pairs i <= j with c_i = c_j = 1."""
    pairs = [(i, j) for i in range(dim) for j in range(i, dim)]
    out = np.zeros((1 << dim) - 1, dtype=np.int64)
    for c in range(1, 1 << dim):
        for k, (i, j) in enumerate(pairs):
            if (c >> i) & 1 and (c >> j) & 1:
                out[c - 1] |= 1 << k
    return out


@numba.njit(cache=True)
def _scan_range(pair_mask, start, stop, out):
    g = start ^ (start >> 1)
    state = 0
    for k in range(pair_mask.shape[0]):
        if (g >> k) & 1:
            state ^= pair_mask[k]
    n = 0
    if state == 0 and g != 0:
        if n < out.shape[0]:
            out[n] = g
        n += 1
    for i in range(start + 1, stop):
        k = 0
        while not (i >> k) & 1:
            k += 1
        g ^= 1 << k
        state ^= pair_mask[k]
        if state == 0:
            if n < out.shape[0]:
                out[n] = g
            n += 1
    return n


def scan_range(dim: int, start: int, stop: int, n_scan: int | None = None) -> np.ndarray:
    """Nonempty self-orthogonal subsets among Gray indices [start, stop)."""
    masks = pair_parity_masks(dim)
    if n_scan is not None:
        masks = masks[:n_scan]
    cap = 1 << 12
    while True:
        out = np.empty(cap, dtype=np.int64)
        n = _scan_range(masks, start, stop, out)
        if n <= cap:
            return out[:n].copy()
        cap = n


def _scan_job(args):
    dim, start, stop, n_scan = args
    return scan_range(dim, start, stop, n_scan)


_CKPT_MAGIC = b"CPSTSCAN"
_CKPT_VERSION = 1
_CKPT_HEADER = struct.Struct("<8sHBBQQQ")


@dataclass
class ScanCheckpoint:
    dim: int
    halved: bool
    total: int
    position: int
    survivors: np.ndarray

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        tmp = path.with_name(path.name + ".tmp")
        data = np.ascontiguousarray(self.survivors, dtype="<u8")
        with open(tmp, "wb") as fh:
            fh.write(
                _CKPT_HEADER.pack(
                    _CKPT_MAGIC, _CKPT_VERSION, self.dim, int(self.halved),
                    self.total, self.position, len(data),
                )
            )
            fh.write(data.tobytes())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ScanCheckpoint":
        raw = Path(path).read_bytes()
        if len(raw) < _CKPT_HEADER.size:
            raise ValueError("checkpoint file is truncated")
        magic, version, dim, halved, total, position, count = _CKPT_HEADER.unpack_from(raw)
        if magic != _CKPT_MAGIC:
            raise ValueError("not a census checkpoint")
        if version != _CKPT_VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        body = raw[_CKPT_HEADER.size :]
        if len(body) != 8 * count:
            raise ValueError("checkpoint survivor list is truncated")
        survivors = np.frombuffer(body, dtype="<u8").astype(np.int64)
        return cls(dim, bool(halved), total, position, survivors)


def self_orthogonal_masks(
    dim: int,
    chunk_bits: int = 24,
    workers: int = 1,
    checkpoint: str | os.PathLike | None = None,
    time_budget: float | None = None,
) -> np.ndarray:
    """All nonempty self-orthogonal subsets of Z_2^dim \\ {0}, sorted bitmasks."""
    if not 1 <= dim <= CENSUS_MAX_DIM:
        raise DimensionError(f"census supports dim in [1, {CENSUS_MAX_DIM}]")
    n_elems = (1 << dim) - 1
    full = (1 << n_elems) - 1
    halved = dim >= 3
    n_scan = n_elems - 1 if halved else n_elems
    total = 1 << n_scan
    chunk = 1 << min(chunk_bits, n_scan)

    found: list[np.ndarray] = []
    position = 0
    if checkpoint is not None and Path(checkpoint).exists():
        ck = ScanCheckpoint.load(checkpoint)
        if (ck.dim, ck.halved, ck.total) != (dim, halved, total):
            raise ValueError("checkpoint belongs to a different scan")
        position = ck.position
        found.append(ck.survivors)
        log.info("resuming scan at %d / %d", position, total)

    began = time.monotonic()
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while position < total:
            starts = [position + k * chunk for k in range(max(workers, 1))]
            jobs = [(dim, s, min(s + chunk, total), n_scan) for s in starts if s < total]
            results = list(pool.map(_scan_job, jobs)) if pool else [_scan_job(j) for j in jobs]
            found.extend(results)
            position = jobs[-1][2]
            if checkpoint is not None:
                ScanCheckpoint(dim, halved, total, position, np.concatenate(found)).save(checkpoint)
            if time_budget is not None and position < total and time.monotonic() - began > time_budget:
                raise BudgetExceeded(f"scan stopped at {position} / {total}")
    finally:
        if pool:
            pool.shutdown()

    masks = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
    if halved:
        # the empty set is skipped by the scan; its complement is the full set
        masks = np.concatenate([masks, masks ^ full, np.array([full], dtype=np.int64)])
    masks = np.unique(masks)
    assert np.all(_pair_parities(masks, dim) == 0), "complement closure broke self-orthogonality"
    return masks


def _mask_bits(masks: np.ndarray, dim: int) -> np.ndarray:
    n_elems = (1 << dim) - 1
    return ((masks[:, None] >> np.arange(n_elems, dtype=np.int64)[None, :]) & 1).astype(np.int32)


def _pair_parities(masks: np.ndarray, dim: int) -> np.ndarray:
    bits = _mask_bits(masks, dim)
    vecs = np.arange(1, 1 << dim)
    rows = ((vecs[:, None] >> np.arange(dim)[None, :]) & 1).astype(np.int32)
    pair = np.stack([rows[:, i] * rows[:, j] for i in range(dim) for j in range(i, dim)], axis=1)
    return (bits @ pair) % 2


def codeword_weights(masks: np.ndarray, dim: int) -> np.ndarray:
    """w[s, a] = #{c in set s : a . c = 1}, the weight of a^T M."""
    bits = _mask_bits(masks, dim)
    vecs = np.arange(1, 1 << dim, dtype=np.uint32)
    a = np.arange(1 << dim, dtype=np.uint32)
    dot = (np.bitwise_count(vecs[:, None] & a[None, :]) & 1).astype(np.int32)
    return bits @ dot


def filter_survivors(masks: np.ndarray, dim: int, constraint: Constraint) -> tuple[np.ndarray, np.ndarray]:
    """Split self-orthogonal sets meeting the divisor constraint into (spanning, non-spanning)."""
    if len(masks) == 0:
        return masks, masks
    w = codeword_weights(masks, dim)
    nonzero = w[:, 1:]
    spanning = np.all(nonzero > 0, axis=1)
    D = np.gcd.reduce(nonzero, axis=1)
    ok = constraint.accepts(D)
    return masks[ok & spanning], masks[ok & ~spanning]


# --------------------------------------------------------------------------
# GL(d, 2) action


@numba.njit(cache=True)
def _gl_columns(dim, total):
    n = 1 << dim
    out = np.empty((total, dim), dtype=np.uint8)
    span = np.zeros((dim + 1, n), dtype=np.bool_)
    span[0, 0] = True
    choice = np.zeros(dim + 1, dtype=np.int64)
    cols = np.zeros(dim, dtype=np.int64)
    level = 0
    idx = 0
    while level >= 0:
        if level == dim:
            for j in range(dim):
                out[idx, j] = cols[j]
            idx += 1
            level -= 1
            continue
        v = choice[level] + 1
        while v < n and span[level, v]:
            v += 1
        if v >= n:
            choice[level] = 0
            level -= 1
            continue
        choice[level] = v
        cols[level] = v
        for x in range(n):
            span[level + 1, x] = span[level, x]
        for x in range(n):
            if span[level, x]:
                span[level + 1, x ^ v] = True
        level += 1
        choice[level] = 0
    return out


def gl_order(dim: int) -> int:
    out = 1
    for k in range(dim):
        out *= (1 << dim) - (1 << k)
    return out


@lru_cache(maxsize=4)
def general_linear_group(dim: int) -> np.ndarray:
    """Every invertible map as the tuple of images of e_1..e_d (uint8, read-only)."""
    if not 1 <= dim <= CANONICAL_MAX_DIM:
        raise DimensionError(f"group enumeration supports dim in [1, {CANONICAL_MAX_DIM}]")
    out = _gl_columns(dim, gl_order(dim))
    out.setflags(write=False)
    return out


@numba.njit(cache=True)
def _image_masks(gl, elements, dim):
    n = 1 << dim
    out = np.empty(gl.shape[0], dtype=np.int64)
    img = np.zeros(n, dtype=np.int64)
    for g in range(gl.shape[0]):
        for v in range(1, n):
            low = 0
            while not (v >> low) & 1:
                low += 1
            img[v] = img[v ^ (1 << low)] ^ gl[g, low]
        acc = 0
        for k in range(elements.shape[0]):
            acc |= 1 << (img[elements[k]] - 1)
        out[g] = acc
    return out


def mask_to_elements(mask: int) -> list[int]:
    return [k + 1 for k in range(int(mask).bit_length()) if (mask >> k) & 1]


def elements_to_mask(elements) -> int:
    out = 0
    for c in elements:
        out |= 1 << (c - 1)
    return out


def orbit_masks(mask: int, dim: int) -> np.ndarray:
    """Sorted distinct images of a set under GL(dim, 2)."""
    gl = general_linear_group(dim)
    elements = np.array(mask_to_elements(mask), dtype=np.int64)
    return np.unique(_image_masks(gl, elements, dim))


def _lex_key(masks: np.ndarray, dim: int) -> np.ndarray:
    """Bit-reversed masks: among equal-size sets, a larger key is a lexicographically
    smaller sorted element list (the smallest element of the symmetric
    difference decides)."""
    n_elems = (1 << dim) - 1
    out = np.zeros_like(masks)
    for k in range(n_elems):
        out |= ((masks >> k) & 1) << (n_elems - 1 - k)
    return out


def _canonical_mask(orbit: np.ndarray, dim: int) -> int:
    return int(orbit[np.argmax(_lex_key(orbit, dim))])


def canonical_form(C: ConnectionSet) -> ConnectionSet:
    """Lexicographically least sorted element list over the GL(dim, 2) orbit."""
    if C.dim > CANONICAL_MAX_DIM:
        raise DimensionError(f"canonical forms are limited to dim <= {CANONICAL_MAX_DIM}")
    orbit = orbit_masks(C.mask(), C.dim)
    return ConnectionSet(C.dim, tuple(mask_to_elements(_canonical_mask(orbit, C.dim))))


# --------------------------------------------------------------------------
# orbits and the census


@dataclass
class CensusResult:
    dim: int
    constraint: Constraint
    orbit_reps: list[ConnectionSet]
    orbit_sizes: list[int]
    complement_pairing: list[tuple[int, int]]
    valencies: list[int]
    raw_survivors: int = 0
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_orbits(self) -> int:
        return len(self.orbit_reps)


def orbit_census(survivors, dim: int) -> dict:
    """Group survivor bitmasks into GL(dim, 2) orbits.

    Returns the CensusResult fields ``orbit_reps``, ``orbit_sizes``,
    ``complement_pairing`` and ``valencies``. Orbits are ordered by valency,
    then by canonical form.
    """
    given = np.asarray(survivors if isinstance(survivors, np.ndarray) else list(survivors), dtype=np.int64)
    S = np.unique(given)
    # seeds are taken in the caller's order; the result must not depend on it
    seeds = np.searchsorted(S, given)
    group_order = gl_order(dim)
    orbit_id = np.full(len(S), -1, dtype=np.int64)
    found = []
    for i in seeds:
        if orbit_id[i] >= 0:
            continue
        orbit = orbit_masks(int(S[i]), dim)
        idx = np.searchsorted(S, orbit)
        idx_ok = np.minimum(idx, len(S) - 1)
        if np.any(S[idx_ok] != orbit):
            raise OrbitClosureError(f"orbit of {int(S[i]):#x} leaves the survivor set")
        if np.any(orbit_id[idx] >= 0):
            raise OrbitClosureError("orbits overlap")
        if group_order % len(orbit):
            raise OrbitClosureError(f"orbit size {len(orbit)} does not divide |GL| = {group_order}")
        orbit_id[idx] = len(found)
        canon = _canonical_mask(orbit, dim)
        found.append((bin(canon).count("1"), -int(_lex_key(np.array([canon]), dim)[0]), canon, len(orbit)))

    order = sorted(range(len(found)), key=lambda k: found[k][:2])
    rank_of = {old: new for new, old in enumerate(order)}
    reps = [ConnectionSet(dim, tuple(mask_to_elements(found[k][2]))) for k in order]
    sizes = [found[k][3] for k in order]

    full = (1 << ((1 << dim) - 1)) - 1
    pairs = set()
    for new, old in enumerate(order):
        comp = found[old][2] ^ full
        j = int(np.searchsorted(S, comp))
        if j < len(S) and S[j] == comp:
            other = rank_of[int(orbit_id[j])]
            pairs.add((min(new, other), max(new, other)))
    return {
        "orbit_reps": reps,
        "orbit_sizes": sizes,
        "complement_pairing": sorted(pairs),
        "valencies": [r.m for r in reps],
    }


def enumerate_census(
    dim: int,
    constraint: Constraint | str = Constraint.EVEN_SO,
    checkpoint: str | os.PathLike | None = None,
    workers: int = 1,
    time_budget: float | None = None,
    include_nonspanning_orbits: bool = False,
) -> CensusResult:
    """Spanning self-orthogonal connection sets with the given divisor class, up to GL(dim, 2)."""
    if isinstance(constraint, str):
        constraint = Constraint.parse(constraint)
    if not 1 <= dim <= CENSUS_MAX_DIM:
        raise DimensionError(f"census supports dim in [1, {CENSUS_MAX_DIM}]")
    began = time.monotonic()
    so = self_orthogonal_masks(dim, workers=workers, checkpoint=checkpoint, time_budget=time_budget)
    spanning, nonspanning = filter_survivors(so, dim, constraint)
    log.info("%d self-orthogonal sets, %d spanning survivors", len(so), len(spanning))
    fields = orbit_census(spanning, dim) if len(spanning) else {
        "orbit_reps": [], "orbit_sizes": [], "complement_pairing": [], "valencies": [],
    }
    assert sum(fields["orbit_sizes"]) == len(spanning)
    diagnostics = {
        "self_orthogonal_sets": int(len(so)),
        "nonspanning_survivors": int(len(nonspanning)),
    }
    if include_nonspanning_orbits and len(nonspanning):
        diagnostics["nonspanning_orbits"] = len(orbit_census(nonspanning, dim)["orbit_reps"])
    diagnostics["seconds"] = round(time.monotonic() - began, 3)
    return CensusResult(dim=dim, constraint=constraint, raw_survivors=int(len(spanning)),
                        diagnostics=diagnostics, **fields)
