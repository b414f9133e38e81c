"""Every consistency check for one (n, k), as run by ``xcorr4 verify``."""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import affine, bpoly, expsum, linzero
from .gf2core import Field


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0


@dataclass
class SuiteReport:
    n: int
    k: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.ok), None)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "ok": self.ok,
            "checks": {r.name: {"ok": r.ok, "detail": r.detail} for r in self.results},
            "first_failure": self.first_failure.name if self.first_failure else None,
        }
        if timing:
            out["meta"] = {"seconds": {r.name: round(r.seconds, 4) for r in self.results}}
        return out


def _sample(elems: np.ndarray, count: int | None, rng) -> list[int]:
    if count is None or count >= elems.size:
        return elems.tolist()
    return rng.choice(elems, size=count, replace=False).tolist()


def check_recurrences(field: Field, rng, samples: int = 1000) -> CheckResult:
    tp = bpoly.tower(field)
    elems = field.subfield_elements(tp.nk)
    pts = elems[rng.integers(0, elems.size, samples)]
    b1 = bpoly.b_values(field, pts)
    b2 = bpoly.b_values_alt(field, pts)
    ok = all(np.array_equal(x, y) for x, y in zip(b1, b2))
    z = bpoly.z_eval(field, elems)
    zk = bool(np.all(field.frob(z, tp.k) == z))
    trbz = bpoly.trbz_check(field, elems)
    return CheckResult("recurrences", ok and zk and trbz,
                       {"dB1_eq_dB2": ok, "z_in_subfield": zk, "trbz": trbz, "points": samples})


def check_zero_counts(field: Field, rng) -> CheckResult:
    tp = bpoly.tower(field)
    zc = bpoly.zero_counts(field)
    mult = zc.zeros_Bn * (1 << tp.k) == ((1 << tp.nk) - (1 << tp.k)) // ((1 << 2 * tp.k) - 1)
    return CheckResult("zero_counts", zc.ok and mult,
                       {"zeros_Bn": zc.zeros_Bn, "zeros_Zn": zc.zeros_Zn,
                        "expected_Bn": zc.expected_Bn, "expected_Zn": zc.expected_Zn,
                        "degree_bookkeeping": mult})


def check_trace_identities(field: Field, rng) -> CheckResult:
    tp = bpoly.tower(field)
    pts = [a for a in sorted(bpoly._witness_table(field)) if bpoly.b_eval(field, a, tp.n) != 0]
    ok = all(bpoly.trace_identities_check(field, a) for a in pts)
    return CheckResult("trace_identities", ok, {"points": len(pts)})


def check_determinants(field: Field, rng, samples: int = 100) -> CheckResult:
    tp = bpoly.tower(field)
    elems = field.subfield_elements(tp.nk)
    pts = [0] + _sample(elems[1:], samples, rng)
    c = affine.make_c(field)
    m_ok = all(bpoly.det_check_Mn(field, a, c) for a in pts)
    mp_ok = all(bpoly.det_check_Mn_prime(field, a, i)
                for a in pts for i in range(1, (1 << tp.k) + 1))
    return CheckResult("determinants", m_ok and mp_ok,
                       {"det_M_eq_Z2": m_ok, "det_Mprime_eq_Y": mp_ok, "points": len(pts)})


def check_affine(field: Field, rng) -> CheckResult:
    tp = bpoly.tower(field)
    cl = affine.classify_all(field, oracle=True)
    want = affine.expected_class_counts(tp.n, tp.k)
    c = affine.make_c(field)
    c_ok = bool(field.in_subfield(c, tp.k)) and field.trace(c, 1, tp.k) == 1
    zero_ok = affine.classify_a(field, 0, c).zeros == [c]
    ok = cl.ok and cl.counts == want and c_ok and zero_ok
    return CheckResult("affine_classification", ok,
                       {"counts": {kk.value: v for kk, v in cl.counts.items()},
                        "expected": {kk.value: v for kk, v in want.items()},
                        "mismatches": [field.to_hex(a) for a in cl.mismatches[:10]],
                        "c_trace_one": c_ok})


def check_bluher(field: Field, rng) -> CheckResult:
    tp = bpoly.tower(field)
    res = affine.bluher_counts(field)
    want = affine.bluher_formula(tp.n, tp.k)
    return CheckResult("bluher_counts", res.trichotomy_ok and res.counts == want,
                       {"measured": vars(res.counts), "expected": vars(want),
                        "trichotomy": res.trichotomy_ok})


def check_linzero(field: Field, rng) -> CheckResult:
    tp = bpoly.tower(field)
    sw = linzero.sweep(field)
    allowed = set(sw["T_hist"]) <= {1, 1 << 2 * tp.k}
    closure = True
    for a in field.subfield_elements(tp.nk)[1:].tolist():
        for i in range(1, (1 << tp.k) + 1):
            rep = linzero.lin_report(field, a, i)
            if rep.T_a > 1 and not linzero.kernel_scaling_closed(field, rep.kernel):
                closure = False
    ok = allowed and closure and not sw["failures"]
    return CheckResult("linear_kernels", ok,
                       {"T_hist": {str(kk): v for kk, v in sorted(sw["T_hist"].items())},
                        "y_zero_split": {str(kk): v for kk, v in sorted(sw["y_zero_split"].items())},
                        "scaling_closed": closure,
                        "failures": len(sw["failures"])})


def check_s0(ctx, rng, samples: int | None) -> CheckResult:
    f = ctx.field
    tp = ctx.params
    pts = [0] + _sample(f.subfield_elements(tp.nk)[1:], samples, rng)
    bad = []
    for a in pts:
        s = expsum.s0_direct(ctx, a)
        tag = expsum.case_of(f, a)
        if s != expsum.s0_via_affine(ctx, a) or (a and s != expsum.expected_s0(tp, tag)):
            bad.append(f.to_hex(a))
    return CheckResult("s0_cross_check", not bad, {"points": len(pts), "mismatches": bad[:10]})


def check_si_laws(ctx, rng, samples: int | None) -> CheckResult:
    f = ctx.field
    tp = ctx.params
    k = tp.k
    pts = _sample(f.subfield_elements(tp.nk)[1:], samples, rng)
    arr = np.asarray(pts, dtype=np.int64)
    si = {i: expsum.twisted_sums(ctx, arr, i) for i in range(1, (1 << k) + 1)}
    s0 = expsum.twisted_sums(ctx, arr, 0)
    sym = all(np.array_equal(si[j], si[(1 << k) + 1 - j]) for j in range(1, (1 << (k - 1)) + 1))
    sq = True
    div = True
    for idx, a in enumerate(pts):
        for i in range(1, (1 << k) + 1):
            t = linzero.lin_report(f, a, i).T_a
            if int(si[i][idx]) ** 2 != (1 << 2 * tp.nk) * t:
                sq = False
        if (int(s0[idx]) + sum(int(si[i][idx]) for i in si)) % ((1 << k) + 1):
            div = False
    return CheckResult("si_laws", sym and sq and div,
                       {"symmetry": sym, "square_law": sq, "divisibility": div, "points": len(pts)})


def check_distribution(ctx, rng) -> CheckResult:
    rep = expsum.verify_distribution(ctx)
    d = rep.to_dict()
    return CheckResult("distribution", rep.ok,
                       {"checks": d["checks"], "predicted": d["predicted"]["entries"],
                        "case_counts": d["case_counts"], "first_mismatch": d["first_mismatch"]})


def run_suite(field: Field, samples: int | None = None, seed: int = 0,
              exhaustive: bool = False,
              progress: Callable[[str], None] | None = None) -> SuiteReport:
    """Run every check. ``samples`` caps the a-values used by the exponential
    sum checks (default: all a when m <= 12, else 50); ``exhaustive`` uses all."""
    tp = bpoly.tower(field)
    if exhaustive:
        samples = None
    elif samples is None and field.m > 12:
        samples = 50
    rng = np.random.default_rng(seed)
    ctx = expsum.make_context(field)
    steps = [
        lambda: check_recurrences(field, rng),
        lambda: check_zero_counts(field, rng),
        lambda: check_trace_identities(field, rng),
        lambda: check_determinants(field, rng),
        lambda: check_affine(field, rng),
        lambda: check_bluher(field, rng),
        lambda: check_linzero(field, rng),
        lambda: check_s0(ctx, rng, samples),
        lambda: check_si_laws(ctx, rng, samples),
        lambda: check_distribution(ctx, rng),
    ]
    results = []
    for step in steps:
        t0 = time.perf_counter()
        res = step()
        res.seconds = time.perf_counter() - t0
        results.append(res)
        if progress is not None:
            progress(f"{res.name}: {'ok' if res.ok else 'FAIL'} ({res.seconds:.2f} s)")
    return SuiteReport(tp.n, tp.k, results)


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)
