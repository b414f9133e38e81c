"""m-sequences s_t = Tr_m(alpha^t), u_t = Tr_{m/2}(beta^t) and their cross-correlation.

Three routes to the correlation values, all exact integer arithmetic:

``direct``
    the defining sum over the full period 2^m - 1 for every shift;
``folded``
    the same sum with s folded modulo 2^{m/2} - 1 first (valid because that
    period divides 2^m - 1), O(2^m) per decimation; used for searches;
``expsum``
    S(a) for a in GF(2^{m/2})*, evaluated in the field domain by enumerating
    every x in GF(2^m) as a polynomial-basis integer.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .errors import ArgNotInSubfield, InvalidParams, ShiftOutOfRange
from .gf2core import Field

C = "C"
C_PLUS_1 = "C+1"


@dataclass(frozen=True)
class Spectrum:
    """Multiset of correlation values: ``counts`` maps value -> multiplicity."""

    counts: dict
    m: int
    d: int
    convention: str = C

    def __post_init__(self):
        if self.convention not in (C, C_PLUS_1):
            raise ValueError(f"unknown convention {self.convention!r}")
        ordered = {int(v): int(c) for v, c in sorted(self.counts.items()) if c}
        if any(c < 0 for c in ordered.values()):
            raise ValueError("negative count in spectrum")
        object.__setattr__(self, "counts", ordered)

    @classmethod
    def from_values(cls, values: Iterable[int], m: int, d: int, convention: str = C):
        arr = values if isinstance(values, np.ndarray) else list(values)
        vals, cnts = np.unique(np.asarray(arr, dtype=np.int64), return_counts=True)
        return cls(dict(zip(vals.tolist(), cnts.tolist())), m, d, convention)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def n_values(self) -> int:
        return len(self.counts)

    def power_sum(self) -> int:
        """Sum of C-convention values weighted by multiplicity."""
        off = 1 if self.convention == C_PLUS_1 else 0
        return sum((v - off) * c for v, c in self.counts.items())

    def as_convention(self, convention: str) -> "Spectrum":
        if convention == self.convention:
            return self
        shift = 1 if convention == C_PLUS_1 else -1
        return Spectrum({v + shift: c for v, c in self.counts.items()},
                        self.m, self.d, convention)

    def same_distribution(self, other: "Spectrum") -> bool:
        """Equal multisets after bringing ``other`` to this convention."""
        return self.counts == other.as_convention(self.convention).counts

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "d": self.d,
            "convention": self.convention,
            "entries": [{"value": v, "count": c} for v, c in self.counts.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "Spectrum":
        counts = {int(e["value"]): int(e["count"]) for e in obj["entries"]}
        return cls(counts, int(obj["m"]), int(obj["d"]), obj.get("convention", C))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "count"])
        for v, c in self.counts.items():
            w.writerow([v, c])
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class SeqPair:
    field: Field
    beta: int
    d: int
    s: np.ndarray
    u: np.ndarray

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def q(self) -> int:
        return self.u.size

    @property
    def v(self) -> np.ndarray:
        """The decimated short sequence v_t = u_{dt}, one period."""
        return self.u[(np.arange(self.q, dtype=np.int64) * self.d) % self.q]


def _half(field: Field) -> int:
    if field.m % 2:
        raise InvalidParams(f"m = {field.m} must be even")
    return field.m // 2


def short_sequence(field: Field) -> np.ndarray:
    """u_t = Tr_{m/2}(beta^t), beta = alpha^(2^{m/2}+1), t = 0 .. 2^{m/2} - 2."""
    h = _half(field)
    q = (1 << h) - 1
    t = np.arange(q, dtype=np.int64)
    powers = field.exp[(t * ((1 << h) + 1)) % field.p]
    return field.trace_bits(powers, h)


def make_pair(field: Field, d: int | None = None) -> SeqPair:
    h = _half(field)
    q = (1 << h) - 1
    if d is None:
        if field.params is None:
            raise InvalidParams("no decimation given and the field carries no tower")
        d = field.params.d
    d = int(d) % q
    if math.gcd(d, q) != 1:
        raise InvalidParams(f"gcd(d={d}, 2^{h} - 1) != 1")
    beta = field.pow(field.alpha, (1 << h) + 1)
    return SeqPair(field, beta, d, field.trace_table, short_sequence(field))


def is_maximal_length(bits: np.ndarray, degree: int) -> bool:
    """Every nonzero ``degree``-bit window appears exactly once per period."""
    n = bits.size
    if n != (1 << degree) - 1:
        return False
    idx = np.arange(n, dtype=np.int64)
    win = np.zeros(n, dtype=np.int64)
    for i in range(degree):
        win |= bits[(idx + i) % n].astype(np.int64) << i
    if (win == 0).any():
        return False
    return np.unique(win).size == n


# ----------------------------------------------------------- time domain

def cross_correlation(pair: SeqPair, tau: int) -> int:
    """C_d(tau) by the defining sum over one full period of s."""
    q = pair.q
    if not 0 <= tau < q:
        raise ShiftOutOfRange(f"tau = {tau} outside [0, {q - 1}]")
    p = pair.s.size
    t = np.arange(p, dtype=np.int64)
    v = pair.v[(t + tau) % q]
    return int(p - 2 * np.count_nonzero(pair.s ^ v))


def folded_signs(pair: SeqPair) -> np.ndarray:
    """w_j = sum over t = j (mod q) of (-1)^s_t."""
    sign = 1 - 2 * pair.s.astype(np.int64)
    return sign.reshape(-1, pair.q).sum(axis=0)


def correlation_values(pair: SeqPair, method: str = "direct") -> np.ndarray:
    """C_d(tau) for tau = 0 .. q-1 as an int64 array."""
    if method == "direct":
        return kernels.correlate_direct(pair.s, pair.v)
    if method == "folded":
        return kernels.correlate_folded(folded_signs(pair), pair.v)
    raise ValueError(f"unknown time-domain method {method!r}")


def spectrum_direct(pair: SeqPair, method: str = "direct") -> Spectrum:
    return Spectrum.from_values(correlation_values(pair, method), pair.m, pair.d, C)


# ---------------------------------------------------------- field domain

def _power_trace_table(field: Field, d: int) -> np.ndarray:
    """h[x] = Tr_{m/2}(x^(d(2^{m/2}+1))) for every x in GF(2^m), as uint8."""
    h = _half(field)
    g = (d * ((1 << h) + 1)) % field.p
    xs = np.arange(field.size, dtype=np.int64)
    return field.trace_bits(field.pow(xs, g), h)


def exp_sums(field: Field, d: int, a) -> np.ndarray:
    """S(a) for an array of a in GF(2^{m/2})*; field-domain enumeration."""
    h = _half(field)
    a = np.atleast_1d(np.asarray(a, dtype=np.int64))
    if (a == 0).any() or not np.all(field.in_subfield(a, h)):
        raise ArgNotInSubfield(f"S(a) needs a in GF(2^{h})*")
    hx = _power_trace_table(field, d)
    la = field.log[a].astype(np.int64)
    return kernels.expsum_field(field.trace_table, field.log, hx, la)


def exp_sum_S(field: Field, d: int, a: int) -> int:
    return int(exp_sums(field, d, [a])[0])


def exp_sum_values(field: Field, d: int) -> tuple[np.ndarray, np.ndarray]:
    """(a, S(a)) over all a in GF(2^{m/2})*, a in log order."""
    h = _half(field)
    elems = field.subfield_elements(h)[1:]
    return elems, exp_sums(field, d, elems)


def spectrum_expsum(field: Field, d: int) -> Spectrum:
    """Distribution of S(a), reported in the C+1 convention."""
    q = (1 << _half(field)) - 1
    _, vals = exp_sum_values(field, d)
    return Spectrum.from_values(vals, field.m, int(d) % q, C_PLUS_1)


def spectrum_equiv_check(pair: SeqPair) -> bool:
    """{C_d(tau) + 1} and {S(a)} agree as multisets."""
    measured = spectrum_direct(pair).as_convention(C_PLUS_1)
    return measured.counts == spectrum_expsum(pair.field, pair.d).counts


def power_sum_check(spectrum: Spectrum) -> bool:
    return spectrum.power_sum() == 1


def spectrum(field: Field, d: int, method: str = "auto") -> Spectrum:
    """C-convention spectrum by the chosen route.

    ``auto`` is the literal sum up to m = 20 and the folded sum beyond.
    """
    if method == "auto":
        method = "direct" if field.m <= 20 else "folded"
    if method == "expsum":
        return spectrum_expsum(field, d).as_convention(C)
    return spectrum_direct(make_pair(field, d), method)


# ---------------------------------------------------------------- search

@dataclass
class SearchHit:
    d: int
    n_values: int | None
    spectrum: Spectrum | None
    family: list = dc_field(default_factory=list)
    note: str = ""

    @property
    def four_valued(self) -> bool:
        return self.n_values == 4


def cyclotomic_rep(d: int, q: int) -> int:
    """Smallest element of the 2-cyclotomic coset of d modulo q."""
    best = d % q
    cur = best
    while True:
        cur = (2 * cur) % q
        if cur == d % q:
            return best
        best = min(best, cur)


def family_members(m: int) -> list[tuple[int, int, int]]:
    """(n, k, d) with m = 2nk, n odd >= 3, d = (2^nk + 1)/(2^k + 1)."""
    out = []
    if m % 2:
        return out
    nk = m // 2
    for k in range(1, nk + 1):
        if nk % k:
            continue
        n = nk // k
        if n >= 3 and n % 2:
            out.append((n, k, ((1 << nk) + 1) // ((1 << k) + 1)))
    return out


def decimation_search(field: Field, d_range: Iterable[int] | None = None,
                      method: str = "folded",
                      progress: Callable[[int, int], None] | None = None) -> list[SearchHit]:
    """Spectrum of every decimation in ``d_range`` (default: 1 .. 2^{m/2} - 2).

    Decimations in one 2-cyclotomic coset modulo 2^{m/2} - 1 give the same
    decimated sequence, so each coset is computed once. Non-coprime d are
    reported with ``spectrum=None`` and a note.
    """
    h = _half(field)
    q = (1 << h) - 1
    ds = sorted({int(d) % q for d in (range(1, q) if d_range is None else d_range)})
    fam = family_members(field.m)
    fam_reps = {}
    for n, k, d0 in fam:
        fam_reps.setdefault(cyclotomic_rep(d0, q), []).append((n, k))

    hits = []
    cache: dict[int, Spectrum] = {}
    pair = None
    for i, d in enumerate(ds):
        if math.gcd(d, q) != 1:
            hits.append(SearchHit(d, None, None, [], f"skipped: gcd(d, {q}) != 1"))
            if progress is not None:
                progress(i + 1, len(ds))
            continue
        rep = cyclotomic_rep(d, q)
        if rep not in cache:
            if method == "expsum":
                cache[rep] = spectrum_expsum(field, rep).as_convention(C)
            else:
                if pair is None:
                    pair = make_pair(field, rep)
                pr = SeqPair(field, pair.beta, rep, pair.s, pair.u)
                cache[rep] = spectrum_direct(pr, method)
        sp = cache[rep]
        spec_d = Spectrum(sp.counts, field.m, d, C)
        family = sorted(fam_reps.get(rep, []))
        hits.append(SearchHit(d, spec_d.n_values, spec_d, family))
        if progress is not None:
            progress(i + 1, len(ds))
    return hits
