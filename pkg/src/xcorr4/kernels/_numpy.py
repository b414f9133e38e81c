"""Pure-numpy implementations of the hot loops.

Every function here has a twin in ``_numba`` with the same signature and
bit-identical output; ``tests/test_kernels.py`` holds them to that.
"""
import numpy as np

NAME = "numpy"


def set_threads(n):
    return 1


def exp_table(modulus, m):
    """Powers x^0 .. x^(2^m - 2) modulo ``modulus``, built by block doubling."""
    p = (1 << m) - 1
    out = np.ones(1, dtype=np.int64)
    top = np.int64(1 << m)
    mod = np.int64(modulus)
    while out.size < p:
        # x^L for the current block length L
        shift = _mul_x_scalar(int(out[-1]), modulus, m)
        block = _mul_const(out, shift, mod, top, m)
        out = np.concatenate([out, block])
    return out[:p].astype(np.int32)


def _mul_x_scalar(v, modulus, m):
    v <<= 1
    if v >> m & 1:
        v ^= modulus
    return v


def _mul_const(arr, c, mod, top, m):
    acc = np.zeros_like(arr)
    cur = arr.copy()
    for bit in range(m):
        if c >> bit & 1:
            acc ^= cur
        cur <<= 1
        cur ^= np.where(cur & top, mod, 0)
    return acc


def correlate_direct(s, v):
    """C[tau] = sum_t (-1)^(s[t] + v[(t + tau) mod q]) over the full period of s."""
    p = s.size
    q = v.size
    s_sign = 1.0 - 2.0 * s.astype(np.float64)
    v_sign = 1.0 - 2.0 * v.astype(np.float64)
    reps = p // q + 2
    v_ext = np.tile(v_sign, reps)
    out = np.empty(q, dtype=np.int64)
    for tau in range(q):
        out[tau] = int(round(float(np.dot(s_sign, v_ext[tau:tau + p]))))
    return out


def correlate_folded(w, v):
    """C[tau] = sum_j w[j] (-1)^v[(j + tau) mod q], exact via FFT and rounding."""
    q = v.size
    v_sign = 1.0 - 2.0 * v.astype(np.float64)
    wf = np.fft.rfft(w.astype(np.float64))
    vf = np.fft.rfft(v_sign)
    raw = np.fft.irfft(np.conj(wf) * vf, n=q)
    out = np.rint(raw)
    if np.max(np.abs(raw - out), initial=0.0) > 1e-3:
        raise ArithmeticError("FFT correlation lost integer exactness")
    return out.astype(np.int64)


def expsum_log(tr, u, offsets, step):
    """For each offset e: 1 + sum_{t<p} (-1)^(tr[(e + t*step) mod p] + u[t mod q]).

    A negative offset drops the ``tr`` term (the a = 0 sum).
    """
    p = tr.size
    q = u.size
    t = np.arange(p, dtype=np.int64)
    idx = (t * step) % p
    uu = u[t % q]
    out = np.empty(offsets.size, dtype=np.int64)
    for i, e in enumerate(offsets):
        if e < 0:
            bits = uu
        else:
            bits = tr[(idx + e) % p] ^ uu
        out[i] = 1 + p - 2 * int(np.count_nonzero(bits))
    return out


def expsum_field(tr, log, h, la):
    """For each log-index l: sum over x in GF(2^m) of (-1)^(tr[l + log x] + h[x])."""
    p = tr.size
    lx = log[1:].astype(np.int64)
    hx = h[1:]
    out = np.empty(la.size, dtype=np.int64)
    for i, l in enumerate(la):
        bits = tr[(lx + l) % p] ^ hx
        out[i] = 1 - 2 * int(h[0]) + p - 2 * int(np.count_nonzero(bits))
    return out
