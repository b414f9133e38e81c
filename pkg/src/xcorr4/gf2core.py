"""Binary field GF(2^m), m <= 24, on full exp/log tables.

Elements are plain ``int`` values in the polynomial basis: bit ``i`` is the
coefficient of ``x^i``, so ``0`` is ZERO, ``1`` is ONE and ``2`` (the class of
``x``) is the fixed primitive element alpha. Every arithmetic method also
accepts numpy integer arrays and then works elementwise.

Multiplication, powers and Frobenius maps go through the log table, where
ZERO carries the sentinel ``-1`` and is always branched on explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator

import numpy as np

from . import kernels
from .errors import (
    BadSubfieldDegree,
    DivisionByZero,
    InvalidParams,
    NonPrimitiveModulus,
    UnsupportedDegree,
)

MAX_DEGREE = 24

# Lowest-weight primitive polynomial per degree (bit i = coefficient of x^i).
# Primitivity is re-checked on every build; the table is a convenience only.
DEFAULT_MODULI = {
    2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x187,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1107, 13: 0x2027, 14: 0x5007,
    15: 0x8003, 16: 0x1100B, 17: 0x20009, 18: 0x40081, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x1000087,
}

ZERO = 0
ONE = 1


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division (n < 2^25 here)."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def clmul_mod(a: int, b: int, modulus: int, m: int) -> int:
    """Carry-less product of two polynomial-basis ints reduced mod ``modulus``."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= modulus
    return r


def _x_pow_mod(e: int, modulus: int, m: int) -> int:
    r, b = 1, 2
    while e:
        if e & 1:
            r = clmul_mod(r, b, modulus, m)
        b = clmul_mod(b, b, modulus, m)
        e >>= 1
    return r


def is_primitive(modulus: int, m: int) -> bool:
    """True iff ``modulus`` has degree m and x has order exactly 2^m - 1 modulo it.

    Order 2^m - 1 forces irreducibility: a reducible modulus has fewer than
    2^m - 1 units.
    """
    if m < 1 or modulus >> m != 1 or not modulus & 1:
        return False
    p = (1 << m) - 1
    if _x_pow_mod(p, modulus, m) != 1:
        return False
    return all(_x_pow_mod(p // r, modulus, m) != 1 for r in prime_factors(p))


@dataclass(frozen=True)
class TowerParams:
    """The tower GF(2^k) < GF(2^nk) < GF(2^2nk) and its decimation."""

    k: int
    n: int
    max_degree: int = dc_field(default=MAX_DEGREE, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParams(f"k must be >= 1, got {self.k}")
        if self.n < 3 or self.n % 2 == 0:
            raise InvalidParams(f"n must be odd and >= 3, got {self.n}")
        if self.m > self.max_degree:
            raise UnsupportedDegree(
                f"m = 2nk = {self.m} exceeds the configured bound {self.max_degree}")
        if ((1 << self.nk) + 1) % ((1 << self.k) + 1):
            raise InvalidParams("2^k + 1 does not divide 2^nk + 1")
        if math.gcd(self.d, self.q) != 1:
            raise InvalidParams(f"gcd(d={self.d}, 2^nk - 1) != 1")

    @property
    def nk(self) -> int:
        return self.n * self.k

    @property
    def m(self) -> int:
        return 2 * self.n * self.k

    @property
    def p(self) -> int:
        return (1 << self.m) - 1

    @property
    def q(self) -> int:
        """Period of the short sequence, 2^nk - 1."""
        return (1 << self.nk) - 1

    @property
    def d(self) -> int:
        return ((1 << self.nk) + 1) // ((1 << self.k) + 1)

    @property
    def degenerate_k1(self) -> bool:
        return self.k == 1


def _is_scalar(x) -> bool:
    return isinstance(x, (int, np.integer))


class Field:
    """GF(2^m) with fixed primitive element alpha = x. Immutable after build."""

    ZERO = ZERO
    ONE = ONE
    alpha = 2

    def __init__(self, m: int, modulus: int, exp: np.ndarray, log: np.ndarray,
                 params: TowerParams | None = None):
        self.m = m
        self.modulus = modulus
        self.p = (1 << m) - 1
        self.size = 1 << m
        self.exp = exp
        self.log = log
        self.params = params
        exp.setflags(write=False)
        log.setflags(write=False)

    def __repr__(self):
        tag = f", n={self.params.n}, k={self.params.k}" if self.params else ""
        return f"Field(m={self.m}, modulus=0x{self.modulus:x}{tag})"

    # ------------------------------------------------------------------ I/O

    @property
    def hex_width(self) -> int:
        return (self.m + 3) // 4

    def to_hex(self, x: int) -> str:
        return format(int(x), f"0{self.hex_width}x")

    def from_hex(self, s: str) -> int:
        x = int(s, 16)
        if not 0 <= x < self.size:
            raise ValueError(f"{s!r} is not an element of GF(2^{self.m})")
        return x

    def from_log(self, i):
        if _is_scalar(i):
            return int(self.exp[int(i) % self.p])
        return self.exp[np.asarray(i, dtype=np.int64) % self.p].astype(np.int64)

    def log_of(self, x) -> int:
        if x == 0:
            raise DivisionByZero("log of ZERO")
        return int(self.log[x])

    # ----------------------------------------------------------- arithmetic

    @staticmethod
    def add(x, y):
        return x ^ y

    def mul(self, x, y):
        if _is_scalar(x) and _is_scalar(y):
            if x == 0 or y == 0:
                return 0
            return int(self.exp[(int(self.log[x]) + int(self.log[y])) % self.p])
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        lx = self.log[x].astype(np.int64)
        ly = self.log[y].astype(np.int64)
        out = self.exp[(lx + ly) % self.p].astype(np.int64)
        return np.where((x == 0) | (y == 0), 0, out)

    def pow(self, x, e: int):
        e = int(e)
        if _is_scalar(x):
            if x == 0:
                if e < 0:
                    raise DivisionByZero("ZERO to a negative power")
                return 1 if e == 0 else 0
            return int(self.exp[(int(self.log[x]) * (e % self.p)) % self.p])
        x = np.asarray(x, dtype=np.int64)
        zero = x == 0
        if e < 0 and zero.any():
            raise DivisionByZero("ZERO to a negative power")
        lx = self.log[x].astype(np.int64)
        out = self.exp[(lx * (e % self.p)) % self.p].astype(np.int64)
        if e == 0:
            return np.ones_like(x)
        return np.where(zero, 0, out)

    def inv(self, x):
        if _is_scalar(x) and x == 0:
            raise DivisionByZero("inverse of ZERO")
        return self.pow(x, -1)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def frob(self, x, j: int):
        """x^(2^j); the exponent is reduced mod m first."""
        return self.pow(x, pow(2, int(j) % self.m, self.p))

    # ------------------------------------------------------------ subfields

    def _check_sub(self, l: int, top: int | None = None) -> int:
        top = self.m if top is None else top
        if top < 1 or self.m % top:
            raise BadSubfieldDegree(f"{top} does not divide m = {self.m}")
        if l < 1 or top % l:
            raise BadSubfieldDegree(f"{l} does not divide {top}")
        return top

    def trace(self, x, l: int, top: int | None = None):
        """Relative trace Tr_l^top (top defaults to m); x must lie in GF(2^top)."""
        top = self._check_sub(l, top)
        acc = x
        cur = x
        for _ in range(top // l - 1):
            cur = self.frob(cur, l)
            acc = acc ^ cur
        return acc

    def norm(self, x, l: int, top: int | None = None):
        """Relative norm N_l^top as the product of the GF(2^l)-conjugates."""
        top = self._check_sub(l, top)
        acc = x
        cur = x
        for _ in range(top // l - 1):
            cur = self.frob(cur, l)
            acc = self.mul(acc, cur)
        return acc

    def in_subfield(self, x, l: int):
        self._check_sub(l)
        f = self.frob(x, l)
        if _is_scalar(x):
            return f == x
        return f == np.asarray(x)

    def subfield_elements(self, l: int) -> np.ndarray:
        """GF(2^l) inside this field: ZERO, then alpha^(c*j) for j = 0 .. 2^l - 2."""
        self._check_sub(l)
        c = self.p // ((1 << l) - 1)
        idx = np.arange((1 << l) - 1, dtype=np.int64) * c
        return np.concatenate([[0], self.exp[idx].astype(np.int64)])

    def subfield_iter(self, l: int) -> Iterator[int]:
        for x in self.subfield_elements(l):
            yield int(x)

    # --------------------------------------------------------- trace as bits

    def trace_bit_mask(self, top: int | None = None) -> int:
        """Mask w with Tr_1^top(y) = parity(y & w) for every y in GF(2^top)."""
        top = self._check_sub(1, top)
        w = 0
        for j in range(self.m):
            if self.trace(1 << j, 1, top) & 1:
                w |= 1 << j
        return w

    @cached_property
    def abs_trace_mask(self) -> int:
        return self.trace_bit_mask(self.m)

    def trace_bits(self, x, top: int | None = None):
        """Absolute trace Tr_1^top as 0/1 via the bit mask (x in GF(2^top))."""
        w = self.abs_trace_mask if top in (None, self.m) else self.trace_bit_mask(top)
        if _is_scalar(x):
            return (int(x) & w).bit_count() & 1
        return (np.bitwise_count(np.asarray(x, dtype=np.int64) & w) & 1).astype(np.uint8)

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Tr_1^m(alpha^i) for i = 0 .. p-1 as uint8; this is the m-sequence s."""
        t = self.trace_bits(self.exp)
        t.setflags(write=False)
        return t

    # --------------------------------------------------------- self-checks

    def order(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("ZERO has no multiplicative order")
        lx = int(self.log[x])
        return self.p // math.gcd(lx, self.p)

    def verify_tables(self, samples: int = 10_000, seed: int = 0) -> bool:
        """Spot-check log-domain products against carry-less multiplication."""
        rng = np.random.default_rng(seed)
        i = rng.integers(0, self.p, samples)
        j = rng.integers(0, self.p, samples)
        a = self.exp[i]
        b = self.exp[j]
        if not np.array_equal(self.log[a], i) or not np.array_equal(self.log[b], j):
            return False
        prod = self.exp[(i + j) % self.p]
        for x, y, z in zip(a[:2000].tolist(), b[:2000].tolist(), prod[:2000].tolist()):
            if clmul_mod(x, y, self.modulus, self.m) != z:
                return False
        return bool(np.array_equal(self.mul(a, b), prod))


def build_field(spec: TowerParams | int, modulus: int | None = None,
                max_degree: int = MAX_DEGREE) -> Field:
    """Build GF(2^m) for a tower (m = 2nk) or a raw degree m.

    The modulus, default or supplied, is verified primitive before any table
    is built; a failure raises ``NonPrimitiveModulus``.
    """
    if isinstance(spec, TowerParams):
        params, m = spec, spec.m
    else:
        params, m = None, int(spec)
    if m < 2 or m > max_degree:
        raise UnsupportedDegree(f"degree {m} outside 2..{max_degree}")
    if modulus is None:
        if m not in DEFAULT_MODULI:
            raise UnsupportedDegree(f"no built-in modulus for degree {m}")
        modulus = DEFAULT_MODULI[m]
    modulus = int(modulus)
    if modulus >> m != 1:
        raise NonPrimitiveModulus(f"modulus 0x{modulus:x} does not have degree {m}")
    if not is_primitive(modulus, m):
        raise NonPrimitiveModulus(f"modulus 0x{modulus:x} is not primitive of degree {m}")

    exp = np.asarray(kernels.exp_table(modulus, m), dtype=np.int32)
    log = np.full(1 << m, -1, dtype=np.int32)
    log[exp] = np.arange(exp.size, dtype=np.int32)
    if (log[1:] < 0).any():
        raise NonPrimitiveModulus(f"x does not generate GF(2^{m})* modulo 0x{modulus:x}")
    return Field(m, modulus, exp, log, params)
