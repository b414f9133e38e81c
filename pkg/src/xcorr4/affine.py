"""Zeros of the affine polynomial A_a(x) = a^(2^k) x^(2^2k) + x^(2^k) + a x + c.

Brute-force enumeration over GF(2^nk) is the oracle of record; the closed
forms built from B_n and Z_n are what gets tested against it.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum

import numpy as np

from . import bpoly
from .errors import BadSubfieldDegree, InvalidParams
from .gf2core import Field


class ZeroClass(str, Enum):
    ONE = "ONE"
    TWO_K = "TWO_K"
    TWO_2K = "TWO_2K"
    NONE_ = "NONE_"


def make_c(field: Field, ctx=None) -> int:
    """c = (delta + delta^-1)^-1 for the context's delta."""
    delta = bpoly.root_delta(field) if ctx is None else ctx.delta
    return field.inv(delta ^ field.inv(delta))


def a_eval(field: Field, a: int, c: int, x):
    k = bpoly.tower(field).k
    return (field.mul(field.frob(a, k), field.frob(x, 2 * k))
            ^ field.frob(x, k) ^ field.mul(a, x) ^ c)


def _by_log(field: Field, xs) -> list[int]:
    return sorted((int(x) for x in xs), key=lambda x: -1 if x == 0 else int(field.log[x]))


def brute_zeros_A(field: Field, a: int, c: int) -> list[int]:
    """Every x in GF(2^nk) with A_a(x) = 0, sorted by log-index (ZERO first)."""
    elems = bpoly.zero_sets(field).elements
    return _by_log(field, elems[a_eval(field, a, c, elems) == 0])


def _abs_trace(field: Field, x) -> int:
    return int(field.trace(x, 1, bpoly.tower(field).nk))


def two_k_base_zero(field: Field, a: int, c: int) -> int:
    """c * sum_{i=0}^{(n-1)/2} B_{n-1}^(2^(2i+1)k) / B_n^(2^(2i+1)k + 2^2ik - 1)."""
    tp = bpoly.tower(field)
    k, n = tp.k, tp.n
    b = bpoly.b_values(field, a)
    bn, bn_1 = b[n - 1], b[n - 2]
    acc = 0
    for i in range((n - 1) // 2 + 1):
        e = (1 << (2 * i + 1) * k) + (1 << 2 * i * k) - 1
        acc ^= field.div(field.frob(bn_1, (2 * i + 1) * k), field.pow(bn, e))
    return field.mul(c, acc)


@dataclass
class AffineReport:
    a: int
    zero_class: ZeroClass
    zeros: list
    closed_form_zero: int | None
    traces: list
    c: int
    oracle_zeros: list | None = None

    @property
    def oracle_match(self) -> bool | None:
        if self.oracle_zeros is None:
            return None
        return self.oracle_zeros == self.zeros

    def to_dict(self, field: Field) -> dict:
        return {
            "a": field.to_hex(self.a),
            "class": self.zero_class.value,
            "zeros": [field.to_hex(z) for z in self.zeros],
            "traces": list(self.traces),
        }


def classify_a(field: Field, a: int, c: int | None = None, oracle: bool = False) -> AffineReport:
    """Class of a from (Z_n(a), B_n(a)) and the zeros of A_a.

    Class ONE and TWO_K zeros come from the closed forms, TWO_2K zeros from
    enumeration. With ``oracle`` the enumeration is also stored for comparison.
    """
    tp = bpoly.tower(field)
    if c is None:
        c = make_c(field)
    a = int(a)
    b = bpoly.b_values(field, a)
    bn = int(b[tp.n - 1])
    z = int(bpoly._z_from(field, a, b))
    closed = None
    if z != 0:
        cls = ZeroClass.ONE
        closed = field.div(field.mul(c, bn), z)
        zeros = [closed]
    elif bn != 0:
        cls = ZeroClass.TWO_K
        closed = two_k_base_zero(field, a, c)
        mus = field.subfield_elements(tp.k)
        zeros = _by_log(field, closed ^ field.mul(mus, bn))
    else:
        cls = ZeroClass.TWO_2K
        zeros = brute_zeros_A(field, a, c)
    traces = [_abs_trace(field, x) for x in zeros]
    rep = AffineReport(a, cls, zeros, closed, traces, c)
    if oracle:
        rep.oracle_zeros = zeros if cls is ZeroClass.TWO_2K else brute_zeros_A(field, a, c)
    return rep


def trace_pattern_check(field: Field, report: AffineReport) -> bool:
    """ONE: Tr(zero) = Tr_k(nc); TWO_K: all traces 0; TWO_2K: all traces 1."""
    tp = bpoly.tower(field)
    if report.zero_class is ZeroClass.ONE:
        nc = report.c if tp.n % 2 else 0
        return report.traces == [int(field.trace(nc, 1, tp.k))]
    want = 0 if report.zero_class is ZeroClass.TWO_K else 1
    return all(t == want for t in report.traces)


def homogeneous_zero_space_ok(field: Field, a: int) -> bool:
    """Zeros of l_a(x) = A_a(x) + c are closed under + and GF(2^k) scaling."""
    k = bpoly.tower(field).k
    zs = brute_zeros_A(field, a, 0)
    zset = set(zs)
    arr = np.asarray(zs, dtype=np.int64)
    for z in zs:
        if not set((arr ^ z).tolist()) <= zset:
            return False
    for mu in field.subfield_elements(k).tolist():
        if not set(np.atleast_1d(field.mul(arr, mu)).tolist()) <= zset:
            return False
    return True


@dataclass
class Classification:
    counts: dict                      # ZeroClass -> number of a in GF(2^nk)*
    reports: list = dc_field(default_factory=list)
    mismatches: list = dc_field(default_factory=list)   # a values failing a check

    @property
    def ok(self) -> bool:
        return not self.mismatches


def classify_all(field: Field, c: int | None = None, oracle: bool = True,
                 keep_reports: bool = False) -> Classification:
    """Classify every a in GF(2^nk)*; checks closed forms, trace patterns and,
    with ``oracle``, agreement with enumeration."""
    tp = bpoly.tower(field)
    if c is None:
        c = make_c(field)
    counts = Counter()
    reports, bad = [], []
    for a in field.subfield_elements(tp.nk)[1:].tolist():
        rep = classify_a(field, a, c, oracle=oracle)
        counts[rep.zero_class] += 1
        ok = trace_pattern_check(field, rep)
        ok &= all(a_eval(field, a, c, x) == 0 for x in rep.zeros)
        ok &= len(rep.zeros) in (1, 1 << tp.k, 1 << 2 * tp.k)
        if oracle:
            ok &= bool(rep.oracle_match)
        if not ok:
            bad.append(a)
        if keep_reports:
            reports.append(rep)
    return Classification({cl: counts.get(cl, 0) for cl in ZeroClass}, reports, bad)


def expected_class_counts(n: int, k: int) -> dict:
    """|M_1|, |M_2^k|, |M_2^2k| for odd n."""
    b = bluher_formula(n, k)
    return {ZeroClass.ONE: b.N_0, ZeroClass.TWO_K: b.N_2k_1,
            ZeroClass.TWO_2K: b.N_22k_1, ZeroClass.NONE_: 0}


# ------------------------------------------------------------------ Bluher

@dataclass(frozen=True)
class BluherCounts:
    N_0: int
    N_2k_1: int      # b with 2^k - 1 zeros of g
    N_22k_1: int     # b with 2^2k - 1 zeros of g

    @property
    def total(self) -> int:
        return self.N_0 + self.N_2k_1 + self.N_22k_1


def bluher_formula(n: int, k: int) -> BluherCounts:
    q2 = (1 << 2 * k) - 1
    if n % 2:
        n0 = ((1 << (n + 2) * k) - (1 << (n + 1) * k) - (1 << n * k) + 1) // q2
        return BluherCounts(n0, (1 << (n - 1) * k) - 1, ((1 << (n - 1) * k) - 1) // q2)
    n0 = ((1 << (n + 2) * k) - (1 << (n + 1) * k) - (1 << n * k)
          - (1 << 2 * k) + (1 << k) + 1) // q2
    return BluherCounts(n0, 1 << (n - 1) * k, ((1 << (n - 1) * k) - (1 << k)) // q2)


@dataclass
class BluherResult:
    counts: BluherCounts
    trichotomy_ok: bool
    bad_b: list


def bluher_counts(field: Field, n: int | None = None, k: int | None = None) -> BluherResult:
    """Count b in GF(2^nk)* by zeros of g(x) = b^(2^k) x^(2^2k - 1) + b^2 x^(2^k - 1) + b.

    Also checks, per b, the pairing with f(x) = x^(2^k + 1) + b^2 x + b^2:
    (#f, #g) is one of (0|2, 0), (1, 2^k - 1), (2^k + 1, 2^2k - 1).
    ``n`` and ``k`` default to the field's tower but may be any pair with
    nk dividing m (even n included).
    """
    if n is None or k is None:
        tp = bpoly.tower(field)
        n, k = tp.n, tp.k
    if n < 1 or k < 1:
        raise InvalidParams("n and k must be positive")
    nk = n * k
    if field.m % nk:
        raise BadSubfieldDegree(f"nk = {nk} does not divide m = {field.m}")
    xs = field.subfield_elements(nk)
    nz = xs[1:]
    eg1 = (1 << 2 * k) - 1
    eg2 = (1 << k) - 1
    xg1 = field.pow(nz, eg1)
    xg2 = field.pow(nz, eg2)
    xf = field.pow(xs, (1 << k) + 1)
    allowed = {(0, 0), (2, 0), (1, eg2), ((1 << k) + 1, eg1)}
    hist = Counter()
    bad = []
    for b in nz.tolist():
        b2 = field.mul(b, b)
        g = field.mul(xg1, field.frob(b, k)) ^ field.mul(xg2, b2) ^ b
        f = xf ^ field.mul(xs, b2) ^ b2
        ng = int(np.count_nonzero(g == 0))
        nf = int(np.count_nonzero(f == 0))
        hist[ng] += 1
        if (nf, ng) not in allowed:
            bad.append(b)
    extra = set(hist) - {0, eg2, eg1}
    counts = BluherCounts(hist.get(0, 0), hist.get(eg2, 0), hist.get(eg1, 0))
    return BluherResult(counts, not bad and not extra, bad)
