"""Acceptance criteria 1-11, one test each, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -s`` (the lines are also printed
without ``-s``) or ``python tests/test_acceptance.py``. Runtimes are wall
clock on one thread, measured after a JIT warmup on a small field.
"""
import sys
import time

import numpy as np
import pytest

from xcorr4 import TowerParams, affine, bpoly, build_field, expsum, kernels, linzero, seqcorr
from xcorr4.affine import ZeroClass
from xcorr4.expsum import CaseTag

EXPECTED = {
    (3, 2): {-257: 1, -65: 21, -1: 15, 63: 26},
    (3, 3): {-4097: 1, -513: 219, -1: 63, 511: 228},
    (5, 2): {-4097: 17, -1025: 341, -1: 255, 1023: 410},
    (3, 1): {-17: 1, -1: 3, 7: 3},
}

_warm = False


def warmup():
    global _warm
    if _warm:
        return
    kernels.set_threads(1)
    f = build_field(TowerParams(1, 3))
    seqcorr.spectrum(f, 3, "direct")
    seqcorr.spectrum(f, 3, "folded")
    seqcorr.spectrum(f, 3, "expsum")
    expsum.twisted_sums(expsum.make_context(f), [1], 1)
    _warm = True


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def tower(n, k):
    return build_field(TowerParams(k, n))


# ---------------------------------------------------------------- criteria

def c1():
    sp, dt = timed(lambda: seqcorr.spectrum(tower(3, 2), 13, "direct"))
    return sp.counts == EXPECTED[(3, 2)] and dt < 1.0, f"m=12 d=13 literal sum {dt:.3f} s"


def c2():
    sp, dt = timed(lambda: seqcorr.spectrum(tower(3, 3), 57, "direct"))
    return sp.counts == EXPECTED[(3, 3)] and dt <= 30.0, f"m=18 d=57 literal sum {dt:.2f} s"


def c3():
    sp, dt = timed(lambda: seqcorr.spectrum(tower(5, 2), 205, "expsum"))
    return sp.counts == EXPECTED[(5, 2)] and dt <= 300.0, f"m=20 d=205 S(a) path {dt:.2f} s"


def c4():
    cases = [(12, 13), (18, 57), (20, 205), (6, 3), (12, 1), (18, 1), (20, 1), (6, 1), (8, 1), (16, 1)]
    bad = []
    for m, d in cases:
        sp = seqcorr.spectrum(build_field(m), d)
        if sp.power_sum() != 1:
            bad.append((m, d, sp.power_sum()))
    return not bad, f"{len(cases)} (m, d) pairs, failures {bad}"


def c5():
    pairs = [(tower(3, 2), 13), (tower(3, 1), 3), (build_field(12), 1)]
    ok = all(seqcorr.spectrum_equiv_check(seqcorr.make_pair(f, d)) for f, d in pairs)
    return ok, "(3,2) d=13, (3,1) d=3, m=12 d=1"


def c6():
    f = tower(3, 2)
    cl = affine.classify_all(f, oracle=True, keep_reports=True)
    bl = affine.bluher_counts(f).counts
    counts = (cl.counts[ZeroClass.ONE], cl.counts[ZeroClass.TWO_K], cl.counts[ZeroClass.TWO_2K])
    ok = counts == (47, 15, 1) == (bl.N_0, bl.N_2k_1, bl.N_22k_1)
    ok &= len(cl.reports) == 63 and all(r.oracle_match for r in cl.reports)
    ok &= all(affine.trace_pattern_check(f, r) for r in cl.reports)
    return ok and cl.ok, f"|M_1|,|M_4|,|M_16| = {counts}, Bluher {bl}"


def c7():
    ok = True
    f = tower(3, 2)
    ctx = expsum.make_context(f)
    want = {CaseTag.CASE3_ZNZ: -64, CaseTag.CASE2_Z0: 256, CaseTag.CASE1_B0: -1024}
    for a in f.subfield_elements(6)[1:].tolist():
        s = expsum.s0_direct(ctx, a)
        ok &= s == want[expsum.case_of(f, a)] == expsum.s0_via_affine(ctx, a)
    f3 = tower(3, 3)
    ctx3 = expsum.make_context(f3)
    rng = np.random.default_rng(2024)
    pts = rng.choice(f3.subfield_elements(9)[1:], 60, replace=False).tolist()
    for a in pts:
        s = expsum.s0_direct(ctx3, a)
        ok &= s == expsum.expected_s0(ctx3.params, expsum.case_of(f3, a)) == expsum.s0_via_affine(ctx3, a)
    return ok, f"(3,2) all 63 a, (3,3) {len(pts)} sampled a"


def c8():
    f = tower(3, 2)
    ctx = expsum.make_context(f)
    ok = True
    kinds = set()
    for a in f.subfield_elements(6)[1:].tolist():
        s = [expsum.s_i_direct(ctx, a, i) for i in range(1, 5)]
        ok &= s[0] == s[3] and s[1] == s[2]
        for i in range(1, 5):
            t = linzero.lin_report(f, a, i).T_a
            kinds.add(t)
            ok &= s[i - 1] ** 2 == (1 << 12) * t
    ok &= kinds <= {1, 16}
    return ok, f"252 (a, i) pairs, kernel sizes {sorted(kinds)}"


def c9():
    ok = True
    n_a = 0
    for n, k in ((3, 2), (3, 3)):
        ctx = expsum.make_context(tower(n, k))
        decs = expsum.resolve_all(ctx)
        n_a += len(decs)
        ok &= all(d.agrees and (d.s0 + sum(d.s_i)) % ((1 << k) + 1) == 0 for d in decs)
    return ok, f"{n_a} values of a over (3,2) and (3,3)"


def c10():
    sp, dt = timed(lambda: seqcorr.spectrum(tower(3, 1), 3, "direct"))
    return sp.counts == EXPECTED[(3, 1)] and dt < 0.1, f"m=6 d=3 {dt * 1000:.1f} ms"


def c11():
    rng = np.random.default_rng(11)
    ok = True
    notes = []
    for n, k in ((3, 2), (3, 3), (5, 2)):
        f = tower(n, k)
        els = f.subfield_elements(n * k)
        pts = els[rng.integers(0, els.size, 1000)]
        ok &= all(np.array_equal(x, y) for x, y in
                  zip(bpoly.b_values(f, pts), bpoly.b_values_alt(f, pts)))
        ok &= bpoly.trbz_check(f, els)
        sample = rng.choice(els, min(100, els.size), replace=False).tolist()
        c = affine.make_c(f)
        ok &= all(bpoly.det_check_Mn(f, a, c) for a in sample)
        ok &= all(bpoly.det_check_Mn_prime(f, a, i) for a in sample for i in range(1, (1 << k) + 1))
        notes.append(f"({n},{k}) det on {len(sample)} a")
    f = tower(3, 2)
    nontrivial = 0
    for a in f.subfield_elements(6).tolist():
        for i in range(1, 5):
            rep = linzero.lin_report(f, a, i)
            ok &= rep.q_invariant_ok
            if rep.T_a > 1:
                nontrivial += 1
                ok &= linzero.kernel_scaling_closed(f, rep.kernel)
    notes.append(f"{nontrivial} nontrivial kernels closed")
    return ok, "; ".join(notes)


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11]


def report(idx, ok, detail):
    line = f"criterion {idx:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return line


@pytest.mark.parametrize("idx", range(1, len(CRITERIA) + 1))
def test_criterion(idx):
    warmup()
    ok, detail = CRITERIA[idx - 1]()
    report(idx, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    warmup()
    results = []
    for i, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        report(i, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
