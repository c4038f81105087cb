"""Deciding perfect state transfer and periodicity from the code.

The decision itself is combinatorial: PST from 0 can only happen at time
pi/(2D) with D the divisor, and it happens exactly when every pair of
codewords meets in a multiple of D positions. Every verdict is then checked
against the amplitude engine, and a disagreement raises instead of being
smoothed over.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from .codeprofile import center, row_gcd, self_orthogonal
from .gf2core import (
    ConnectionSet,
    DimensionError,
    check_vector,
    divisor,
    sigma,
    weights_array,
)
from .walkengine import RationalPi, amplitude_entry, amplitude_row, default_tol, trace

log = logging.getLogger(__name__)

ALL_PAIRS_MAX_DIM = 13
NUMERIC_MAX_DIM = 20


class InconsistencyError(RuntimeError):
    """The combinatorial verdict and the numeric evaluation disagree."""


class Certification(str, enum.Enum):
    THEOREM = "theorem"
    NUMERIC = "numeric"
    BOTH = "both"


@dataclass(frozen=True)
class PstVerdict:
    occurs: bool
    divisor: int
    time: RationalPi
    target: int | None = None
    phase: complex | None = None
    certified_by: Certification = Certification.THEOREM
    # diagnostics, never used to decide
    max_offdiag: float | None = None
    row_gcd_matches: bool | None = None


@dataclass(frozen=True)
class PeriodInfo:
    period: RationalPi
    alpha: complex


def _codewords(C: ConnectionSet) -> np.ndarray:
    """Distinct codewords as rows of a 0/1 matrix (duplicates from rank < dim removed)."""
    if C.dim > ALL_PAIRS_MAX_DIM:
        raise DimensionError(f"all-pairs check is limited to dim <= {ALL_PAIRS_MAX_DIM}")
    a = np.arange(1 << C.dim, dtype=np.uint32)
    cols = np.array(C.elements, dtype=np.uint32)
    words = (np.bitwise_count(a[:, None] & cols[None, :]) & 1).astype(np.uint8)
    return np.unique(words, axis=0)


def condition_c(C: ConnectionSet, delta: int, all_pairs: bool = False) -> bool:
    """delta divides |supp(x) & supp(y)| for every pair of codewords x, y.

    ``all_pairs=True`` skips the shortcuts (delta = 1, odd delta, delta = 2)
    and checks every pair explicitly.
    """
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    if not all_pairs:
        if delta == 1:
            return True
        if delta % 2:
            return bool(np.all(weights_array(C) % delta == 0))
        if delta == 2:
            return self_orthogonal(C)
    words = _codewords(C).astype(np.int32)
    block = 1024
    for start in range(0, len(words), block):
        inter = words[start : start + block] @ words.T
        if np.any(inter % delta):
            return False
    return True


def condition_b(C: ConnectionSet, delta: int, u: int) -> bool:
    """For all a: delta | wt(a^T M) and wt(a^T M)/delta has the parity of a . u."""
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    u = check_vector(u, C.dim)
    w = weights_array(C)
    if np.any(w % delta):
        return False
    a = np.arange(1 << C.dim, dtype=np.uint32)
    parity = np.bitwise_count(a & np.uint32(u)) & 1
    return bool(np.all((w // delta) % 2 == parity))


def verify_pst_numeric(C: ConnectionSet, t, u: int, tol: float | None = None) -> bool:
    """|H(t)_{0,u}| >= 1 - tol for a vertex u != 0."""
    u = check_vector(u, C.dim)
    if u == 0:
        raise ValueError("u = 0 asks about periodicity, not state transfer")
    if tol is None:
        tol = default_tol(C.dim)
    return abs(amplitude_entry(C, t, 0, u)) >= 1 - tol


def trace_necessary_check(C: ConnectionSet, t, tol: float | None = None) -> bool:
    """tr H(t) vanishes (relative to 2^d); needed for PST at time t."""
    if tol is None:
        tol = default_tol(C.dim)
    return abs(trace(C, t)) <= tol * (1 << C.dim)


def pst_time(D: int) -> RationalPi:
    return RationalPi(1, 2 * D)


def detect_pst(C: ConnectionSet, tol: float | None = None, numeric: bool | None = None) -> PstVerdict:
    """Decide PST out of vertex 0 and certify it numerically when affordable.

    ``numeric=None`` certifies whenever dim <= 20.
    """
    if tol is None:
        tol = default_tol(C.dim)
    if numeric is None:
        numeric = C.dim <= NUMERIC_MAX_DIM
    D = divisor(C)
    time = pst_time(D)
    occurs = condition_c(C, D)
    target = None
    matches = None
    if occurs:
        target = center(C)
        assert target != 0, "condition (c) at the divisor forces a nonzero center"
        if not condition_b(C, D, target):
            raise InconsistencyError(f"condition (c) holds at D={D} but (b) fails for the center")
        matches = row_gcd(C) == D
        if not matches:
            log.warning("PST found but row gcd %d differs from divisor %d", row_gcd(C), D)
        if D == 1 and target != sigma(C):
            raise InconsistencyError("PST at pi/2 must go to the sum of the elements")

    if not numeric:
        return PstVerdict(occurs, D, time, target, None, Certification.THEOREM, None, matches)

    row = amplitude_row(C, time)
    mods = np.abs(row.values)
    mods[0] = 0.0
    max_off = float(mods.max()) if len(mods) > 1 else 0.0
    phase = None
    if occurs:
        phase = row[target]
        if abs(phase) < 1 - tol:
            raise InconsistencyError(
                f"theorem predicts PST 0 -> {target} at {time}, numeric modulus {abs(phase):.3e}"
            )
        expected = time.phase(C.m)
        log.debug("PST phase %s, exp(i m pi / 2D) = %s", phase, expected)
    elif max_off >= 1 - tol:
        raise InconsistencyError(
            f"theorem rules out PST at {time}, numeric modulus {max_off:.3e} at vertex {int(mods.argmax())}"
        )
    return PstVerdict(occurs, D, time, target, phase, Certification.BOTH, max_off, matches)


def min_period(C: ConnectionSet, tol: float | None = None, check: bool = True) -> PeriodInfo:
    D = divisor(C)
    period = RationalPi(1, D)
    alpha = period.phase(C.m)
    if check and C.dim <= NUMERIC_MAX_DIM:
        if tol is None:
            tol = default_tol(C.dim)
        row = amplitude_row(C, period).values
        expected = np.zeros_like(row)
        expected[0] = alpha
        err = float(np.abs(row - expected).max())
        if err > tol:
            raise InconsistencyError(f"H({period}) is not alpha*I (error {err:.3e})")
    return PeriodInfo(period, alpha)


def antipodal_weight_parity(C: ConnectionSet, D: int) -> int:
    """The vector (row weight_i / D mod 2)_i, the target forced by condition (b)."""
    out = 0
    for i, w in enumerate(C.row_weights()):
        if (w // D) & 1:
            out |= 1 << i
    return out


__all__ = [
    "Certification",
    "InconsistencyError",
    "PeriodInfo",
    "PstVerdict",
    "condition_b",
    "condition_c",
    "detect_pst",
    "min_period",
    "pst_time",
    "trace_necessary_check",
    "verify_pst_numeric",
    "antipodal_weight_parity",
]
