"""Pointwise evaluation of B_i, Z_n, Y_n and the V-parametrization on GF(2^nk).

B_i is only ever evaluated through its recurrence (its degree grows like
2^{ik}); every function accepts a scalar element or a numpy array of
elements of GF(2^nk), embedded in the big field GF(2^2nk).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ArgNotInSubfield, DegenerateArg, InvalidParams, NotVFormPoint
from .gf2core import Field, TowerParams, _is_scalar


def tower(field: Field) -> TowerParams:
    if field.params is None:
        raise InvalidParams("field was not built from TowerParams")
    return field.params


def _require_small(field: Field, a):
    tp = tower(field)
    ok = field.in_subfield(a, tp.nk)
    if not (ok if _is_scalar(a) else np.all(ok)):
        raise ArgNotInSubfield(f"argument not in GF(2^{tp.nk})")
    return tp


# ---------------------------------------------------------- tower constants

def twist_r(field: Field) -> int:
    """r = alpha^((2^nk - 1) 2^(k-1))."""
    tp = tower(field)
    return field.from_log(tp.q * (1 << (tp.k - 1)))


def r_exponent(i: int, k: int) -> int:
    """d(i): i for i <= 2^(k-1), else -(2^k + 1 - i)."""
    if not 1 <= i <= 1 << k:
        raise ValueError(f"r-power index {i} outside 1..{1 << k}")
    return i if i <= 1 << (k - 1) else -((1 << k) + 1 - i)


def twist_r_power(field: Field, i: int) -> int:
    return field.pow(twist_r(field), r_exponent(i, tower(field).k))


def root_delta(field: Field) -> int:
    """delta = r^((2^nk + 1)/(2^k + 1)), of multiplicative order 2^k + 1."""
    tp = tower(field)
    return field.pow(twist_r(field), ((1 << tp.nk) + 1) // ((1 << tp.k) + 1))


def y_index(i: int, k: int) -> int:
    """The j in 1..2^(k-1) with delta^j + delta^-j matching r-power index i."""
    return min(i, (1 << k) + 1 - i)


# ------------------------------------------------------------- recurrences

def b_values(field: Field, a) -> list:
    """[B_1(a), ..., B_{n+1}(a)] via B_{i+2} = B_{i+1} + a_i B_i."""
    tp = _require_small(field, a)
    one = 1 if _is_scalar(a) else np.ones_like(np.asarray(a, dtype=np.int64))
    b = [one, one]
    for i in range(1, tp.n):
        b.append(b[i] ^ field.mul(field.frob(a, i * tp.k), b[i - 1]))
    return b


def b_values_alt(field: Field, a) -> list:
    """Same list via B_{i+2} = B_{i+1}^(2^k) + a_1 B_i^(2^2k)."""
    tp = _require_small(field, a)
    k = tp.k
    one = 1 if _is_scalar(a) else np.ones_like(np.asarray(a, dtype=np.int64))
    a1 = field.frob(a, k)
    b = [one, one]
    for i in range(1, tp.n):
        b.append(field.frob(b[i], k) ^ field.mul(a1, field.frob(b[i - 1], 2 * k)))
    return b


def b_eval(field: Field, a, i: int):
    n = tower(field).n
    if not 1 <= i <= n + 1:
        raise ValueError(f"B_i defined for 1 <= i <= {n + 1}, got {i}")
    return b_values(field, a)[i - 1]


def _z_from(field: Field, a, b: list):
    tp = tower(field)
    return b[tp.n] ^ field.mul(a, field.frob(b[tp.n - 2], tp.k))


def z_eval(field: Field, a):
    """Z_n(a) = B_{n+1}(a) + a B_{n-1}(a)^(2^k); always in GF(2^k)."""
    return _z_from(field, a, b_values(field, a))


def norm_k(field: Field, a):
    """N_k^nk(a)."""
    tp = tower(field)
    return field.norm(a, tp.k, tp.nk)


def y_eval(field: Field, a, j: int, delta: int | None = None):
    """Y_n^(j)(a) = Z_n(a)^2 + N_k^nk(a)(delta^j + delta^-j)."""
    k = tower(field).k
    if not 1 <= j <= 1 << (k - 1):
        raise ValueError(f"j must lie in 1..{1 << (k - 1)}, got {j}")
    if delta is None:
        delta = root_delta(field)
    z = z_eval(field, a)
    w = field.pow(delta, j) ^ field.pow(delta, -j)
    return field.mul(z, z) ^ field.mul(norm_k(field, a), w)


@dataclass
class BEval:
    a: int
    b_values: list
    z: int
    y: list
    v_preimage: int | None


def b_report(field: Field, a: int) -> BEval:
    tp = tower(field)
    b = [int(x) for x in b_values(field, a)]
    delta = root_delta(field)
    y = [int(y_eval(field, a, j, delta)) for j in range(1, (1 << (tp.k - 1)) + 1)]
    return BEval(int(a), b, int(_z_from(field, a, b)), y, v_witness(field, a))


# ------------------------------------------------------------ V-form

def v_form(field: Field, v):
    """V = v^(2^2k + 1) / (v + v^(2^k))^(2^k + 1) for v in GF(2^nk) \\ GF(2^k)."""
    tp = _require_small(field, v)
    k = tp.k
    v1 = field.frob(v, k)
    den = v ^ v1
    if (den == 0) if _is_scalar(den) else np.any(den == 0):
        raise DegenerateArg("v lies in GF(2^k)")
    num = field.pow(v, (1 << 2 * k) + 1)
    return field.div(num, field.pow(den, (1 << k) + 1))


def b_n_closed_form(field: Field, v):
    """Tr_k^nk(v)/(v_1 + v_2) * prod_{j=2}^{n-1} (v/(v + v_1))^(2^jk)."""
    tp = tower(field)
    k, n = tp.k, tp.n
    v1 = field.frob(v, k)
    v2 = field.frob(v, 2 * k)
    acc = field.div(field.trace(v, k, tp.nk), v1 ^ v2)
    ratio = field.div(v, v ^ v1)
    for j in range(2, n):
        acc = field.mul(acc, field.frob(ratio, j * k))
    return acc


def _outside_k(field: Field) -> np.ndarray:
    tp = tower(field)
    elems = field.subfield_elements(tp.nk)
    return elems[~field.in_subfield(elems, tp.k)]


@lru_cache(maxsize=8)
def _v_images(field: Field):
    tp = tower(field)
    v = _outside_k(field)
    tr = field.trace(v, tp.k, tp.nk)
    return v, tr, v_form(field, v)


@lru_cache(maxsize=8)
def _witness_table(field: Field) -> dict:
    v, tr, img = _v_images(field)
    table = {}
    for vv, ii in zip(v[tr != 0].tolist(), img[tr != 0].tolist()):
        table.setdefault(ii, vv)
    return table


def v_witness(field: Field, a: int) -> int | None:
    """Some v with nonzero Tr_k^nk(v) and V(v) = a, or None."""
    return _witness_table(field).get(int(a))


@dataclass
class VFibers:
    zero_trace: Counter        # fiber size -> number of images, Tr_k^nk(v) = 0
    nonzero_trace: Counter     # same for Tr_k^nk(v) != 0
    via_u: Counter             # u outside GF(2^k), v = u + u^(2^k)
    zero_trace_images: frozenset
    nonzero_trace_images: frozenset


def v_form_fibers(field: Field) -> VFibers:
    tp = tower(field)
    v, tr, img = _v_images(field)
    zt = Counter(Counter(img[tr == 0].tolist()).values())
    nzt = Counter(Counter(img[tr != 0].tolist()).values())
    # u outside GF(2^2k) within GF(2^nk) is u outside GF(2^k) since n is odd
    u = _outside_k(field)
    img_u = v_form(field, u ^ field.frob(u, tp.k))
    vu = Counter(Counter(img_u.tolist()).values())
    return VFibers(zt, nzt, vu, frozenset(img[tr == 0].tolist()),
                   frozenset(img[tr != 0].tolist()))


# ------------------------------------------------------------ zero sets

@dataclass(frozen=True)
class ZeroSets:
    elements: np.ndarray   # GF(2^nk), ZERO first then log order
    b_n: np.ndarray
    z_n: np.ndarray
    bn_zeros: np.ndarray
    zn_zeros: np.ndarray


@lru_cache(maxsize=8)
def zero_sets(field: Field) -> ZeroSets:
    tp = tower(field)
    elems = field.subfield_elements(tp.nk)
    b = b_values(field, elems)
    z = _z_from(field, elems, b)
    bn = b[tp.n - 1]
    for arr in (elems, bn, z):
        arr.setflags(write=False)
    return ZeroSets(elems, bn, z, elems[bn == 0], elems[z == 0])


@dataclass(frozen=True)
class ZeroCounts:
    zeros_Bn: int
    zeros_Zn: int
    expected_Bn: int
    expected_Zn: int

    @property
    def ok(self) -> bool:
        return self.zeros_Bn == self.expected_Bn and self.zeros_Zn == self.expected_Zn


def expected_zero_counts(n: int, k: int) -> tuple[int, int]:
    """Distinct zeros of B_n and Z_n in GF(2^nk) for odd n."""
    q2 = (1 << 2 * k) - 1
    return ((1 << (n - 1) * k) - 1) // q2, ((1 << (n + 1) * k) - (1 << 2 * k)) // q2


def degree_b(i: int, k: int) -> int:
    q2 = (1 << 2 * k) - 1
    if i % 2:
        return ((1 << i * k) - (1 << k)) // q2
    return ((1 << i * k) - (1 << 2 * k)) // q2


def zero_counts(field: Field) -> ZeroCounts:
    tp = tower(field)
    zs = zero_sets(field)
    eb, ez = expected_zero_counts(tp.n, tp.k)
    return ZeroCounts(int(zs.bn_zeros.size), int(zs.zn_zeros.size), eb, ez)


# --------------------------------------------------------- trace identities

def trace_identity_values(field: Field, a: int) -> tuple[int, int]:
    tp = tower(field)
    if v_witness(field, a) is None:
        raise NotVFormPoint("a has no V-form witness with nonzero subfield trace")
    b = b_values(field, a)
    bn, bn1, bn_1 = b[tp.n - 1], b[tp.n], b[tp.n - 2]
    if bn == 0:
        raise NotVFormPoint("B_n(a) = 0")
    num = field.frob(bn_1, tp.k)
    den = field.pow(bn, (1 << tp.k) + 1)
    first = field.trace(field.div(num, den), tp.k, tp.nk)
    second = field.trace(field.div(field.mul(num, bn1), den), tp.k, tp.nk)
    return first, second


def trace_identities_check(field: Field, a: int) -> bool:
    return trace_identity_values(field, a) == (0, 0)


# --------------------------------------------------------- determinants

def gf_solve(field: Field, matrix, rhs=None):
    """Gaussian elimination over the field.

    Returns ``(det, x)``; ``x`` solves ``matrix @ x = rhs`` when ``rhs`` is
    given and the matrix is nonsingular, else ``None``. Row swaps do not
    change the sign of the determinant in characteristic 2.
    """
    n = len(matrix)
    rows = [list(map(int, r)) + ([int(rhs[i])] if rhs is not None else [])
            for i, r in enumerate(matrix)]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return 0, None
        rows[col], rows[piv] = rows[piv], rows[col]
        pv = rows[col][col]
        det = field.mul(det, pv)
        inv = field.inv(pv)
        rows[col] = [field.mul(inv, x) for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x ^ field.mul(f, y) for x, y in zip(rows[r], rows[col])]
    x = [row[n] for row in rows] if rhs is not None else None
    return det, x


def matrix_Mn(field: Field, a: int) -> list[list[int]]:
    """Coefficients of A_a^(2^ik)(x) = 0, i = 0..n-1, in unknowns x_0..x_{n-1}."""
    tp = _require_small(field, a)
    n, k = tp.n, tp.k
    conj = [field.frob(a, i * k) for i in range(n)]
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][(i + 2) % n] ^= conj[(i + 1) % n]
        mat[i][(i + 1) % n] ^= 1
        mat[i][i] ^= conj[i]
    return mat


def matrix_Mn_prime(field: Field, a: int, r_elem: int) -> list[list[int]]:
    """Coefficients of L_a^(2^2ik)(z) = 0 in unknowns z_0, z_2, .., z_{2n-2}."""
    tp = _require_small(field, a)
    n, k = tp.n, tp.k
    ra = [field.mul(field.frob(r_elem, j * k), field.frob(a, j * k)) for j in range(2 * n)]
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        mat[i][((n + 2 * i + 1) % (2 * n)) // 2] ^= 1
        mat[i][((2 * i + 2) % (2 * n)) // 2] ^= ra[2 * i + 1]
        mat[i][i] ^= ra[2 * i]
    return mat


def det_check_Mn(field: Field, a: int, c: int | None = None) -> bool:
    """det of the A_a system equals Z_n(a)^2; with ``c`` also check its solution."""
    tp = tower(field)
    z = z_eval(field, a)
    rhs = None if c is None else [c] * tp.n
    det, x = gf_solve(field, matrix_Mn(field, a), rhs)
    if det != field.mul(z, z):
        return False
    if c is None or z == 0:
        return True
    v = field.div(field.mul(c, b_eval(field, a, tp.n)), z)
    return x == [field.frob(v, i * tp.k) for i in range(tp.n)]


def det_check_Mn_prime(field: Field, a: int, i: int) -> bool:
    """det of the L_a system (r-power index i) equals the matching Y_n(a)."""
    k = tower(field).k
    det, _ = gf_solve(field, matrix_Mn_prime(field, a, twist_r_power(field, i)))
    return det == y_eval(field, a, y_index(i, k))


def trbz_check(field: Field, a) -> bool:
    """Tr_k^nk(B_n(a) + Z_n(a)) = 0."""
    tp = tower(field)
    b = b_values(field, a)
    t = field.trace(b[tp.n - 1] ^ _z_from(field, a, b), tp.k, tp.nk)
    return bool(np.all(np.asarray(t) == 0))
