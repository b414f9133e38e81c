"""S_0(a), the twisted sums S_i(a), sign resolution and the predicted spectrum.

With y = alpha^t the sums reduce to a single index walk:

    S_j(a) = 1 + sum_{t < p} (-1)^(Tr_m(alpha^(e + t(2^k+1))) + u_(t mod q)),

where e = ind(r^d(j) a) and u is the short m-sequence Tr_nk(alpha^(t(2^nk+1))).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import affine, bpoly, kernels, linzero, seqcorr
from .errors import (ArgNotInSubfield, DegenerateK1, DivisibilityViolation,
                     InvalidParams)
from .gf2core import Field, TowerParams
from .seqcorr import C, C_PLUS_1, Spectrum


class CaseTag(str, Enum):
    CASE1_B0 = "CASE1_B0"
    CASE2_Z0 = "CASE2_Z0"
    CASE3_ZNZ = "CASE3_ZNZ"


@dataclass(frozen=True, eq=False)
class ExpSumContext:
    field: Field
    r: int
    delta: int
    c: int

    @property
    def params(self) -> TowerParams:
        return self.field.params


def make_context(field: Field) -> ExpSumContext:
    """Fix r, delta and c for the tower and check their defining properties."""
    tp = bpoly.tower(field)
    k, nk = tp.k, tp.nk
    r = bpoly.twist_r(field)
    delta = bpoly.root_delta(field)
    if field.pow(r, (1 << nk) + 1) != 1:
        raise InvalidParams("r^(2^nk + 1) != 1")
    if field.order(delta) != (1 << k) + 1 or field.in_subfield(delta, k):
        raise InvalidParams("delta is not a primitive (2^k + 1)-th root outside GF(2^k)")
    for i in range(1, (1 << (k - 1)) + 1):
        if field.log_of(field.pow(r, i)) % ((1 << k) + 1) != i:
            raise InvalidParams(f"ind(r^{i}) is not {i} mod 2^k + 1")
    ctx = ExpSumContext(field, r, delta, 0)
    c = affine.make_c(field, ctx)
    return ExpSumContext(field, r, delta, c)


# ------------------------------------------------------------------ sums

def _check_a(ctx: ExpSumContext, a) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(a, dtype=np.int64))
    if not np.all(ctx.field.in_subfield(arr, ctx.params.nk)):
        raise ArgNotInSubfield(f"a must lie in GF(2^{ctx.params.nk})")
    return arr


@lru_cache(maxsize=8)
def _short_u(field: Field) -> np.ndarray:
    return seqcorr.short_sequence(field)


def twisted_sums(ctx: ExpSumContext, a, i: int) -> np.ndarray:
    """S_i(a) for an array of a; i = 0 is S_0, i in 1..2^k uses r^d(i)."""
    f = ctx.field
    tp = ctx.params
    arr = _check_a(ctx, a)
    tw = 1 if i == 0 else bpoly.twist_r_power(f, i)
    prod = f.mul(arr, tw)
    offsets = np.where(prod == 0, -1, f.log[prod].astype(np.int64))
    return kernels.expsum_log(f.trace_table, _short_u(f), offsets.astype(np.int64),
                              (1 << tp.k) + 1)


def s0_direct(ctx: ExpSumContext, a: int) -> int:
    return int(twisted_sums(ctx, [a], 0)[0])


def s_i_direct(ctx: ExpSumContext, a: int, i: int) -> int:
    if not 1 <= i <= 1 << ctx.params.k:
        raise ValueError(f"i must lie in 1..{1 << ctx.params.k}")
    return int(twisted_sums(ctx, [a], i)[0])


def s0_via_affine(ctx: ExpSumContext, a: int) -> int:
    """2^nk times the signed count of zeros of A_a, sign (-1)^Tr_nk(v)."""
    _check_a(ctx, a)
    rep = affine.classify_a(ctx.field, int(a), ctx.c)
    return (1 << ctx.params.nk) * sum(1 - 2 * t for t in rep.traces)


def expected_s0(params: TowerParams, tag: CaseTag) -> int:
    n, k = params.n, params.k
    return {CaseTag.CASE1_B0: -(1 << (n + 2) * k),
            CaseTag.CASE2_Z0: 1 << (n + 1) * k,
            CaseTag.CASE3_ZNZ: -(1 << n * k)}[tag]


def case_of(field: Field, a: int) -> CaseTag:
    tp = bpoly.tower(field)
    b = bpoly.b_values(field, a)
    if b[tp.n - 1] == 0:
        return CaseTag.CASE1_B0
    if bpoly._z_from(field, a, b) == 0:
        return CaseTag.CASE2_Z0
    return CaseTag.CASE3_ZNZ


# ------------------------------------------------------------ resolution

@dataclass
class SDecomposition:
    a: int
    s0: int
    s_i: list
    s: int
    case_tag: CaseTag
    predicted_s: int | None = None
    t: int | None = None
    eps: int | None = None
    T: list = dc_field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.predicted_s == self.s


def modular_predictor(params: TowerParams, tag: CaseTag, T: list) -> tuple[int, int, int]:
    """Sign resolution from the case and the kernel sizes T_i alone.

    s0 is the case value; index i contributes +-2^nk when T_i = 1 and
    +-2^(n+1)k when T_i = 2^2k, with equal signs inside each pair
    (i, 2^k + 1 - i). Enumerate an even t with |t| <= #small and a sign
    sum E over big pairs; keep the unique combination for which
    s0 + t 2^nk + E 2^((n+1)k + 1) is divisible by 2^k + 1.
    Returns (S, t, E).
    """
    n, k = params.n, params.k
    s0 = expected_s0(params, tag)
    m1 = (1 << k) + 1
    small = sum(1 for x in T if x == 1)
    big = len(T) - small
    if big % 2:
        raise DivisibilityViolation("big magnitudes do not come in pairs")
    pairs = big // 2
    sols = set()
    for t in range(-small, small + 1):
        if t % 2:
            continue
        for e in range(-pairs, pairs + 1, 2):
            tot = s0 + t * (1 << n * k) + e * (1 << (n + 1) * k + 1)
            if tot % m1 == 0:
                sols.add((tot // m1, t, e))
    if len(sols) != 1:
        raise DivisibilityViolation(f"sign resolution not unique: {sorted(sols)}")
    return sols.pop()


def _decompose(ctx: ExpSumContext, a: int, s0: int, s_i: list, predict: bool) -> SDecomposition:
    tp = ctx.params
    total = s0 + sum(s_i)
    if total % ((1 << tp.k) + 1):
        raise DivisibilityViolation(f"2^k + 1 does not divide s0 + sum s_i at a = {a}")
    tag = case_of(ctx.field, a)
    dec = SDecomposition(int(a), int(s0), [int(x) for x in s_i],
                         total // ((1 << tp.k) + 1), tag)
    if predict:
        dec.T = [linzero.lin_report(ctx.field, a, i).T_a for i in range(1, (1 << tp.k) + 1)]
        dec.predicted_s, dec.t, dec.eps = modular_predictor(tp, tag, dec.T)
    return dec


def resolve_S(ctx: ExpSumContext, a: int, predict: bool = True) -> SDecomposition:
    """Direct (s0 + sum s_i)/(2^k + 1) plus the independent modular prediction."""
    arr = _check_a(ctx, a)
    if arr[0] == 0:
        raise ArgNotInSubfield("a must be nonzero")
    s0 = s0_direct(ctx, a)
    s_i = [s_i_direct(ctx, a, i) for i in range(1, (1 << ctx.params.k) + 1)]
    return _decompose(ctx, int(a), s0, s_i, predict)


def resolve_all(ctx: ExpSumContext, predict: bool = True) -> list[SDecomposition]:
    tp = ctx.params
    elems = ctx.field.subfield_elements(tp.nk)[1:]
    s0 = twisted_sums(ctx, elems, 0)
    si = np.stack([twisted_sums(ctx, elems, i) for i in range(1, (1 << tp.k) + 1)], axis=1)
    return [_decompose(ctx, a, int(s0[j]), si[j].tolist(), predict)
            for j, a in enumerate(elems.tolist())]


# -------------------------------------------------------------- spectra

def predicted_spectrum(params: TowerParams) -> Spectrum:
    """Four-valued distribution of C_d(tau), k >= 2."""
    if params.k == 1:
        raise DegenerateK1("k = 1 is three-valued; use k1_spectrum")
    n, k = params.n, params.k
    nk = n * k
    counts = {
        -1 - (1 << (n + 1) * k): ((1 << (n - 1) * k) - 1) // ((1 << 2 * k) - 1),
        -1 - (1 << nk): ((1 << nk) - 1) * ((1 << (k - 1)) - 1) // ((1 << k) - 1),
        -1: (1 << (n - 1) * k) - 1,
        -1 + (1 << nk): ((1 << nk) + 1) * (1 << (k - 1)) // ((1 << k) + 1),
    }
    return Spectrum(counts, params.m, params.d, C)


def k1_spectrum(params: TowerParams) -> Spectrum:
    if params.k != 1:
        raise InvalidParams("k1_spectrum needs k = 1")
    n = params.n
    low = ((1 << (n - 1)) - 1) // 3
    mid = (1 << (n - 1)) - 1
    counts = {-(1 << (n + 1)) - 1: low, -1: mid, (1 << n) - 1: (1 << n) - 1 - low - mid}
    return Spectrum(counts, params.m, params.d, C)


def expected_spectrum(params: TowerParams) -> Spectrum:
    return k1_spectrum(params) if params.k == 1 else predicted_spectrum(params)


def expected_case_counts(params: TowerParams) -> dict:
    n, k = params.n, params.k
    c1 = ((1 << (n - 1) * k) - 1) // ((1 << 2 * k) - 1)
    c2 = (1 << (n - 1) * k) - 1
    return {CaseTag.CASE1_B0: c1, CaseTag.CASE2_Z0: c2,
            CaseTag.CASE3_ZNZ: (1 << n * k) - 1 - c1 - c2}


def s_for_case(params: TowerParams, tag: CaseTag) -> set:
    n, k = params.n, params.k
    return {CaseTag.CASE1_B0: {-(1 << (n + 1) * k)},
            CaseTag.CASE2_Z0: {0},
            CaseTag.CASE3_ZNZ: {-(1 << n * k), 1 << n * k}}[tag]


# -------------------------------------------------------- verification

@dataclass
class VerifyReport:
    params: TowerParams
    predicted: Spectrum
    measured: dict                     # route -> Spectrum (C convention)
    case_counts: dict
    expected_case_counts: dict
    checks: dict                       # name -> bool
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and not self.mismatches

    def to_dict(self) -> dict:
        return {
            "n": self.params.n,
            "k": self.params.k,
            "m": self.params.m,
            "d": self.params.d,
            "ok": self.ok,
            "checks": dict(self.checks),
            "predicted": self.predicted.to_dict(),
            "measured": {kk: v.to_dict() for kk, v in self.measured.items()},
            "case_counts": {t.value: c for t, c in self.case_counts.items()},
            "expected_case_counts": {t.value: c for t, c in self.expected_case_counts.items()},
            "first_mismatch": self.mismatches[0] if self.mismatches else None,
        }


def verify_distribution(ctx: ExpSumContext, time_method: str = "auto",
                        decompose: bool | None = None) -> VerifyReport:
    """Predicted vs measured spectra, per-a case agreement and case counts.

    Mismatches are collected in the report, never raised. ``decompose``
    (default: m <= 18) additionally runs the S_i decomposition and the
    modular predictor for every a.
    """
    f = ctx.field
    tp = ctx.params
    predicted = expected_spectrum(tp)
    mism: list = []
    checks: dict = {}

    measured = {"time": seqcorr.spectrum(f, tp.d, time_method)}
    elems, svals = seqcorr.exp_sum_values(f, tp.d)
    measured["expsum"] = Spectrum.from_values(svals, f.m, tp.d, C_PLUS_1).as_convention(C)
    for route, sp in measured.items():
        checks[f"spectrum_{route}"] = sp.counts == predicted.counts
        if sp.counts != predicted.counts:
            mism.append({"check": f"spectrum_{route}", "measured": sp.to_dict()["entries"],
                         "predicted": predicted.to_dict()["entries"]})
    checks["power_sum"] = all(sp.power_sum() == 1 for sp in measured.values())

    counts = Counter()
    case_ok = True
    tags = {}
    for a, s in zip(elems.tolist(), svals.tolist()):
        tag = case_of(f, a)
        tags[a] = tag
        counts[tag] += 1
        allowed = s_for_case(tp, tag)
        if tp.k == 1 and tag is CaseTag.CASE3_ZNZ:
            allowed = {1 << tp.n}
        if s not in allowed:
            case_ok = False
            if len(mism) < 10:
                mism.append({"check": "case_value", "a": f.to_hex(a), "case": tag.value, "S": s})
    checks["case_values"] = case_ok
    exp_counts = expected_case_counts(tp)
    case_counts = {t: counts.get(t, 0) for t in CaseTag}
    checks["case_counts"] = case_counts == exp_counts

    if decompose is None:
        decompose = f.m <= 18
    if decompose:
        svals_by_a = dict(zip(elems.tolist(), svals.tolist()))
        dec_ok = True
        try:
            decs = resolve_all(ctx, predict=True)
        except DivisibilityViolation as exc:
            decs = []
            dec_ok = False
            mism.append({"check": "decomposition", "error": str(exc)})
        for dec in decs:
            good = dec.agrees and dec.s == svals_by_a[dec.a] and dec.case_tag is tags[dec.a]
            if not good:
                dec_ok = False
                if len(mism) < 10:
                    mism.append({"check": "decomposition", "a": f.to_hex(dec.a),
                                 "direct": dec.s, "predicted": dec.predicted_s,
                                 "measured": svals_by_a[dec.a]})
        checks["decomposition"] = dec_ok
    return VerifyReport(tp, predicted, measured, case_counts, exp_counts, checks, mism)
