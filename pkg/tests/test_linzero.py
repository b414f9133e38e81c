import numpy as np
import pytest

from xcorr4 import bpoly, errors, linzero
from xcorr4.linzero import BinMatrix


def test_binmatrix_basics():
    ident = BinMatrix.from_columns([1 << j for j in range(6)])
    assert linzero.kernel_count(ident) == 1
    zero = BinMatrix((0,) * 6, 6)
    assert linzero.kernel_count(zero) == 64
    m = BinMatrix.from_columns([0b11, 0b11, 0b100])
    assert m.rank() == 2 and m.kernel_basis() == [0b011]
    assert linzero.span([1, 2]) == [0, 1, 2, 3]


def test_map_matches_evaluation(f32):
    rng = np.random.default_rng(3)
    r = bpoly.twist_r_power(f32, 1)
    for a in f32.subfield_elements(6)[::7].tolist():
        mat = linzero.build_linear_map(f32, a, r)
        assert mat.size == f32.m
        for z in rng.integers(0, f32.size, 20).tolist():
            assert mat.apply(z) == linzero.l_eval(f32, a, r, z)


def test_a_zero_invertible(f32):
    r = bpoly.twist_r_power(f32, 1)
    assert linzero.kernel_count(linzero.build_linear_map(f32, 0, r)) == 1


def test_bad_twistor(f32):
    with pytest.raises(errors.BadTwistorR):
        linzero.build_linear_map(f32, 1, 1)
    with pytest.raises(errors.BadTwistorR):
        linzero.build_linear_map(f32, 1, f32.alpha)


def test_elimination_equals_brute_32(f32):
    for a in f32.subfield_elements(6).tolist():
        for i in range(1, 5):
            assert linzero.lin_report(f32, a, i).kernel == linzero.lin_report(f32, a, i, brute=True).kernel


@pytest.mark.parametrize("n,k", [(3, 3), (5, 2)])
def test_membership_sampling(fields, n, k):
    f = fields(n, k)
    rng = np.random.default_rng(5)
    big = [a for a in f.subfield_elements(n * k)[1:].tolist()
           if linzero.lin_report(f, a, 1).T_a > 1][:2]
    pts = big + rng.choice(f.subfield_elements(n * k)[1:], 2).tolist()
    assert all(linzero.membership_sample(f, a, 1, samples=10_000) for a in pts)


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (3, 3), (5, 2)])
def test_sweep_dichotomy(fields, n, k):
    sw = linzero.sweep(fields(n, k))
    assert set(sw["T_hist"]) <= {1, 1 << 2 * k}
    assert not sw["failures"]


def test_y_dichotomy_pointwise(f32):
    assert all(linzero.verify_y_dichotomy(f32, a, i)
               for a in f32.subfield_elements(6).tolist() for i in range(1, 5))


def test_z_zero_forces_trivial_kernel(f32):
    for a in bpoly.zero_sets(f32).zn_zeros.tolist():
        assert all(linzero.lin_report(f32, a, i).T_a == 1 for i in range(1, 5))


def test_q_invariant_and_closure(f32):
    seen = 0
    for a in f32.subfield_elements(6).tolist():
        for i in range(1, 5):
            rep = linzero.lin_report(f32, a, i)
            assert rep.q_invariant_ok
            assert rep.T_a == 1 << rep.kernel_dim_gf2
            if rep.T_a > 1:
                seen += 1
                assert linzero.kernel_scaling_closed(f32, rep.kernel)
    assert seen > 0


def test_deg22k_identity(f32):
    assert all(linzero.deg22k_check(f32, a, i)
               for a in f32.subfield_elements(6)[1:].tolist() for i in range(1, 5))


def test_derivative_nonzero(f32):
    # the z-coefficient r a of L_a is nonzero for a != 0, so no repeated roots
    for i in range(1, 5):
        r = bpoly.twist_r_power(f32, i)
        assert all(f32.mul(r, a) != 0 for a in f32.subfield_elements(6)[1:].tolist())
