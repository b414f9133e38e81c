"""Zeros of L_a(z) = z^(2^(n+1)k) + r^(2^k) a^(2^k) z^(2^2k) + r a z in GF(2^2nk).

L_a is additive, so its zero set is the kernel of an m x m matrix over
GF(2) acting on polynomial-basis coordinates.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import bpoly
from .errors import BadTwistorR
from .gf2core import Field


@dataclass(frozen=True)
class BinMatrix:
    """Square GF(2) matrix; ``rows[i]`` has bit j set iff entry (i, j) is 1."""

    rows: tuple
    size: int

    @classmethod
    def from_columns(cls, cols) -> "BinMatrix":
        size = len(cols)
        rows = [0] * size
        for j, col in enumerate(cols):
            col = int(col)
            for i in range(size):
                if col >> i & 1:
                    rows[i] |= 1 << j
        return cls(tuple(rows), size)

    def apply(self, x: int) -> int:
        out = 0
        for i, row in enumerate(self.rows):
            out |= (bin(row & x).count("1") & 1) << i
        return out

    def _echelon(self):
        rows = list(self.rows)
        pivots = []
        r = 0
        for col in range(self.size):
            bit = 1 << col
            piv = next((i for i in range(r, self.size) if rows[i] & bit), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(self.size):
                if i != r and rows[i] & bit:
                    rows[i] ^= rows[r]
            pivots.append(col)
            r += 1
        return rows[:r], pivots

    def rank(self) -> int:
        return len(self._echelon()[1])

    def nullity(self) -> int:
        return self.size - self.rank()

    def kernel_basis(self) -> list[int]:
        rows, pivots = self._echelon()
        pset = set(pivots)
        basis = []
        for free in range(self.size):
            if free in pset:
                continue
            v = 1 << free
            for row, pc in zip(rows, pivots):
                if row >> free & 1:
                    v |= 1 << pc
            basis.append(v)
        return basis


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(out)


# --------------------------------------------------------------- the map

def check_r(field: Field, r_elem: int) -> None:
    tp = bpoly.tower(field)
    if r_elem == 0 or field.pow(r_elem, (1 << tp.nk) + 1) != 1:
        raise BadTwistorR("r^(2^nk + 1) != 1")
    if field.pow(r_elem, ((1 << tp.nk) + 1) // ((1 << tp.k) + 1)) == 1:
        raise BadTwistorR("r^((2^nk + 1)/(2^k + 1)) = 1")


def l_eval(field: Field, a: int, r_elem: int, z):
    tp = bpoly.tower(field)
    k = tp.k
    ra = field.mul(r_elem, a)
    return (field.frob(z, (tp.n + 1) * k)
            ^ field.mul(field.frob(ra, k), field.frob(z, 2 * k))
            ^ field.mul(ra, z))


def build_linear_map(field: Field, a: int, r_elem: int) -> BinMatrix:
    """Column j is L_a(x^j) in polynomial-basis coordinates."""
    bpoly._require_small(field, a)
    check_r(field, r_elem)
    basis = np.left_shift(1, np.arange(field.m, dtype=np.int64))
    return BinMatrix.from_columns(l_eval(field, a, r_elem, basis).tolist())


def kernel_count(matrix: BinMatrix) -> int:
    return 1 << matrix.nullity()


def brute_kernel(field: Field, a: int, r_elem: int) -> list[int]:
    xs = np.arange(field.size, dtype=np.int64)
    return xs[l_eval(field, a, r_elem, xs) == 0].tolist()


@dataclass
class LinReport:
    a: int
    r_power_index: int
    T_a: int
    kernel_dim_gf2: int
    q_invariant_ok: bool
    kernel: list


def lin_report(field: Field, a: int, i: int, brute: bool = False) -> LinReport:
    """Kernel of L_a for the twist r^d(i); ``brute`` enumerates the field instead."""
    r_elem = bpoly.twist_r_power(field, i)
    if brute:
        check_r(field, r_elem)
        ker = brute_kernel(field, a, r_elem)
        dim = len(ker).bit_length() - 1
    else:
        basis = build_linear_map(field, a, r_elem).kernel_basis()
        ker = span(basis)
        dim = len(basis)
    return LinReport(int(a), i, 1 << dim, dim, _q_invariant(field, a, r_elem, ker), ker)


def _q_invariant(field: Field, a: int, r_elem: int, kernel: list[int]) -> bool:
    tp = bpoly.tower(field)
    v = np.asarray(kernel, dtype=np.int64)
    ra = field.mul(r_elem, a)
    t1 = field.trace_bits(field.mul(ra, field.pow(v, (1 << tp.k) + 1)))
    t2 = field.trace_bits(field.pow(v, (1 << tp.nk) + 1), tp.nk)
    return bool(np.all((t1 ^ t2) == 0))


def q_invariant_check(field: Field, a: int, i: int) -> bool:
    """Tr_2nk(r a v^(2^k+1)) + Tr_nk(v^(2^nk+1)) = 0 on every kernel element v."""
    return lin_report(field, a, i).q_invariant_ok


def verify_y_dichotomy(field: Field, a: int, i: int) -> bool:
    """Y != 0 forces T_a = 1; Y = 0 allows T_a in {1, 2^2k}."""
    k = bpoly.tower(field).k
    t = lin_report(field, a, i).T_a
    y = bpoly.y_eval(field, a, bpoly.y_index(i, k))
    return t == 1 if y != 0 else t in (1, 1 << 2 * k)


def kernel_scaling_closed(field: Field, kernel: list[int]) -> bool:
    """mu * v stays in the kernel for every mu in GF(2^2k)."""
    k = bpoly.tower(field).k
    ker = set(kernel)
    v = np.asarray(kernel, dtype=np.int64)
    for mu in field.subfield_elements(2 * k).tolist():
        if not set(np.atleast_1d(field.mul(v, mu)).tolist()) <= ker:
            return False
    return True


def membership_sample(field: Field, a: int, i: int, samples: int = 10_000,
                      seed: int = 0) -> bool:
    """On random z, L_a(z) = 0 iff z lies in the elimination kernel."""
    r_elem = bpoly.twist_r_power(field, i)
    ker = set(span(build_linear_map(field, a, r_elem).kernel_basis()))
    rng = np.random.default_rng(seed)
    zs = np.concatenate([rng.integers(0, field.size, samples), list(ker)])
    hit = l_eval(field, a, r_elem, zs) == 0
    return all(h == (int(z) in ker) for z, h in zip(zs.tolist(), hit.tolist()))


def deg22k_check(field: Field, a: int, i: int) -> bool:
    """For B_n(a) != 0, every kernel element v satisfies
    B_n^2 v_2 = r_0 r_1^-1 (a_0 a_1 (B_{n-2}^2)^(2^2k) + delta^-1 prod_{j=2}^{n-1} a_j) v_0.
    Here r, delta are the twist for index i and its matching root of unity."""
    tp = bpoly.tower(field)
    k, n = tp.k, tp.n
    b = bpoly.b_values(field, a)
    bn = b[n - 1]
    if bn == 0:
        return True
    r_elem = bpoly.twist_r_power(field, i)
    delta = field.pow(bpoly.root_delta(field), bpoly.r_exponent(i, k))
    bn2 = b[n - 3]
    prod = 1
    for j in range(2, n):
        prod = field.mul(prod, field.frob(a, j * k))
    inner = (field.mul(field.mul(a, field.frob(a, k)), field.frob(field.mul(bn2, bn2), 2 * k))
             ^ field.mul(field.inv(delta), prod))
    coef = field.mul(field.div(r_elem, field.frob(r_elem, k)), inner)
    lhs_c = field.mul(bn, bn)
    for v in lin_report(field, a, i).kernel:
        if field.mul(lhs_c, field.frob(v, 2 * k)) != field.mul(coef, v):
            return False
    return True


def sweep(field: Field, brute: bool = False) -> dict:
    """T_a over every (a, i) with a in GF(2^nk)*: histogram plus Y-split."""
    tp = bpoly.tower(field)
    hist = Counter()
    y_zero_split = Counter()
    failures = []
    for a in field.subfield_elements(tp.nk)[1:].tolist():
        for i in range(1, (1 << tp.k) + 1):
            rep = lin_report(field, a, i, brute=brute)
            hist[rep.T_a] += 1
            y = bpoly.y_eval(field, a, bpoly.y_index(i, tp.k))
            if y == 0:
                y_zero_split[rep.T_a] += 1
            elif rep.T_a != 1:
                failures.append((a, i))
            if not rep.q_invariant_ok:
                failures.append((a, i))
    return {"T_hist": dict(hist), "y_zero_split": dict(y_zero_split), "failures": failures}
