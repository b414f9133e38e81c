"""Wall-clock comparison of the numba and numpy kernel backends."""
from __future__ import annotations

import time

import numpy as np

from . import kernels, seqcorr
from .gf2core import DEFAULT_MODULI, TowerParams, build_field


def _best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_bench(n: int = 3, k: int = 2, repeat: int = 3, backends=None) -> dict:
    """Best-of-``repeat`` seconds per kernel and backend at tower (n, k).

    Each backend runs once untimed first so numba compilation is excluded.
    Every backend must return identical results; a mismatch raises.
    """
    tp = TowerParams(k, n)
    field = build_field(tp)
    pair = seqcorr.make_pair(field, tp.d)
    s, v = pair.s, pair.v
    w = seqcorr.folded_signs(pair)
    hx = seqcorr._power_trace_table(field, tp.d)
    elems = field.subfield_elements(tp.nk)[1:]
    la = field.log[elems].astype(np.int64)
    u = seqcorr.short_sequence(field)
    offsets = la.copy()

    jobs = {
        "exp_table": lambda mod: mod.exp_table(DEFAULT_MODULI[field.m], field.m),
        "correlate_direct": lambda mod: mod.correlate_direct(s, v),
        "correlate_folded": lambda mod: mod.correlate_folded(w, v),
        "expsum_field": lambda mod: mod.expsum_field(field.trace_table, field.log, hx, la),
        "expsum_log": lambda mod: mod.expsum_log(field.trace_table, u, offsets, (1 << k) + 1),
    }
    names = list(backends or kernels.available())
    out: dict = {"n": n, "k": k, "m": field.m, "repeat": repeat, "seconds": {}}
    reference = {}
    for name in names:
        mod = kernels.module(name)
        out["seconds"][name] = {}
        for job, fn in jobs.items():
            res = fn(mod)
            if job in reference and not np.array_equal(res, reference[job]):
                raise AssertionError(f"{name}.{job} disagrees with {names[0]}")
            reference.setdefault(job, res)
            out["seconds"][name][job] = _best(lambda: fn(mod), repeat)
    return out
