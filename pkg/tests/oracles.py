"""Brute-force references that share no code path with the package."""

from __future__ import annotations

import numpy as np
import scipy.linalg


def popcount(x: int) -> int:
    return bin(x).count("1")


def brute_weights(elements, dim):
    """wt(a^T M) for every a, by direct parity counting."""
    return [sum(popcount(a & c) & 1 for c in elements) for a in range(1 << dim)]


def brute_distribution(elements, dim):
    out = {}
    for w in brute_weights(elements, dim):
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def adjacency(elements, dim):
    n = 1 << dim
    A = np.zeros((n, n))
    for x in range(n):
        for c in elements:
            A[x, x ^ c] = 1.0
    return A


def expm_transition(elements, dim, t: float):
    """H(t) = exp(iAt) through scipy's matrix exponential on the dense adjacency."""
    return scipy.linalg.expm(1j * t * adjacency(elements, dim))


def nullspace_self_orthogonal(dim):
    """All nonempty self-orthogonal subsets of Z_2^dim \\ {0} as bitmasks.

    The condition "every n_ij even" is linear in the indicator vector, so the
    sets form the kernel of a GF(2) matrix; enumerate it from a kernel basis.
    """
    vecs = list(range(1, 1 << dim))
    eqs = []
    for i in range(dim):
        for j in range(i, dim):
            eqs.append(sum(1 << k for k, c in enumerate(vecs) if (c >> i) & 1 and (c >> j) & 1))
    rows, pivots = [], []
    for e in eqs:
        for r, p in zip(rows, pivots):
            if (e >> p) & 1:
                e ^= r
        if e:
            p = (e & -e).bit_length() - 1
            for k in range(len(rows)):
                if (rows[k] >> p) & 1:
                    rows[k] ^= e
            rows.append(e)
            pivots.append(p)
    basis = []
    for f in range(len(vecs)):
        if f in pivots:
            continue
        v = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    sols = [0]
    for b in basis:
        sols += [s ^ b for s in sols]
    return sorted(s for s in sols if s)


def random_connection_sets(rng, dims, count):
    """Uniform nonempty subsets of Z_2^d \\ {0}, d drawn from dims."""
    out = []
    while len(out) < count:
        d = int(rng.choice(dims))
        keep = rng.random((1 << d) - 1) < 0.5
        elements = [c + 1 for c in np.flatnonzero(keep)]
        if elements:
            out.append((d, elements))
    return out
