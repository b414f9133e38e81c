"""numba-compiled twins of the kernels in ``_numpy``."""
import os

import numba
import numpy as np
from numba import njit, prange

NAME = "numba"

# the bundled TBB is too old for numba's default layer choice and warns
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "omp"


def set_threads(n):
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


@njit(cache=True)
def exp_table(modulus, m):
    p = (1 << m) - 1
    out = np.empty(p, dtype=np.int32)
    v = 1
    for i in range(p):
        out[i] = v
        v <<= 1
        if (v >> m) & 1:
            v ^= modulus
    return out


@njit(cache=True, parallel=True)
def correlate_direct(s, v):
    p = s.size
    q = v.size
    out = np.empty(q, dtype=np.int64)
    if p % q:
        for tau in prange(q):
            acc = 0
            j = np.int64(tau)
            for t in range(p):
                acc += 1 - 2 * (s[t] ^ v[j])
                j += 1
                if j == q:
                    j = 0
            out[tau] = acc
        return out
    # q divides p: compare each length-q row of s with a window of v doubled
    rows = p // q
    vv = np.empty(2 * q, dtype=v.dtype)
    vv[:q] = v
    vv[q:] = v
    for tau in prange(q):
        w = vv[tau:tau + q]
        diff = 0
        for r in range(rows):
            row = s[r * q:(r + 1) * q]
            d = np.int32(0)
            for i in range(q):
                d += np.int32(row[i] ^ w[i])
            diff += d
        out[tau] = p - 2 * diff
    return out


@njit(cache=True, parallel=True)
def correlate_folded(w, v):
    q = v.size
    out = np.empty(q, dtype=np.int64)
    for tau in prange(q):
        acc = 0
        j = np.int64(tau)
        for i in range(q):
            acc += w[i] * (1 - 2 * np.int64(v[j]))
            j += 1
            if j == q:
                j = 0
        out[tau] = acc
    return out


@njit(cache=True, parallel=True)
def expsum_log(tr, u, offsets, step):
    p = tr.size
    q = u.size
    out = np.empty(offsets.size, dtype=np.int64)
    for i in prange(offsets.size):
        e = offsets[i]
        acc = 1
        j = 0
        if e < 0:
            for t in range(p):
                acc += 1 - 2 * np.int64(u[j])
                j += 1
                if j == q:
                    j = 0
        else:
            idx = e
            for t in range(p):
                acc += 1 - 2 * np.int64(tr[idx] ^ u[j])
                idx += step
                if idx >= p:
                    idx -= p
                j += 1
                if j == q:
                    j = 0
        out[i] = acc
    return out


@njit(cache=True, parallel=True)
def expsum_field(tr, log, h, la):
    p = tr.size
    n = log.size
    out = np.empty(la.size, dtype=np.int64)
    for i in prange(la.size):
        l = la[i]
        acc = 1 - 2 * np.int64(h[0])
        for x in range(1, n):
            idx = l + log[x]
            if idx >= p:
                idx -= p
            acc += 1 - 2 * np.int64(tr[idx] ^ h[x])
        out[i] = acc
    return out
