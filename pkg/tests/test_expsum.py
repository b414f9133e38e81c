from collections import Counter

import numpy as np
import pytest

from xcorr4 import TowerParams, bpoly, errors, expsum, linzero, seqcorr
from xcorr4.expsum import CaseTag


def test_context_invariants(f32, f31, f33):
    for f in (f31, f32, f33):
        ctx = expsum.make_context(f)
        tp = ctx.params
        assert f.pow(ctx.r, (1 << tp.nk) + 1) == 1
        assert f.order(ctx.delta) == (1 << tp.k) + 1
        assert not f.in_subfield(ctx.delta, tp.k)
        assert f.mul(ctx.c, ctx.delta ^ f.inv(ctx.delta)) == 1


def test_s0_values_32(ctx32, f32):
    zs = bpoly.zero_sets(f32)
    b0 = int(zs.bn_zeros[0])
    z0 = next(a for a in zs.zn_zeros.tolist() if a not in set(zs.bn_zeros.tolist()))
    znz = next(a for a in zs.elements[1:].tolist() if bpoly.z_eval(f32, a))
    assert expsum.s0_direct(ctx32, b0) == -1024
    assert expsum.s0_direct(ctx32, z0) == 256
    assert expsum.s0_direct(ctx32, znz) == -64


def test_s0_zero(ctx32):
    assert expsum.s0_via_affine(ctx32, 0) == -64 == expsum.s0_direct(ctx32, 0)


def test_s0_cross_check_exhaustive_32(ctx32, f32):
    for a in f32.subfield_elements(6).tolist():
        assert expsum.s0_direct(ctx32, a) == expsum.s0_via_affine(ctx32, a)


def test_s0_cross_check_sampled_33(ctx33, f33):
    rng = np.random.default_rng(11)
    for a in rng.choice(f33.subfield_elements(9), 50, replace=False).tolist():
        assert expsum.s0_direct(ctx33, a) == expsum.s0_via_affine(ctx33, a)


def test_s_i_laws_32(ctx32, f32):
    for a in f32.subfield_elements(6)[1:].tolist():
        s = [expsum.s_i_direct(ctx32, a, i) for i in range(1, 5)]
        assert s[0] == s[3] and s[1] == s[2]
        for i, v in enumerate(s, 1):
            assert abs(v) in (64, 256)
            assert v * v == (1 << 12) * linzero.lin_report(f32, a, i).T_a


def test_s_i_range(ctx32):
    with pytest.raises(ValueError):
        expsum.s_i_direct(ctx32, 1, 5)
    with pytest.raises(errors.ArgNotInSubfield):
        expsum.s0_direct(ctx32, ctx32.field.alpha)


@pytest.mark.parametrize("key", ["ctx32", "ctx33"])
def test_resolution_agrees(request, key):
    ctx = request.getfixturevalue(key)
    decs = expsum.resolve_all(ctx)
    _, svals = seqcorr.exp_sum_values(ctx.field, ctx.params.d)
    assert [d.s for d in decs] == svals.tolist()
    assert all(d.agrees for d in decs)
    k = ctx.params.k
    for d in decs:
        assert d.s0 + sum(d.s_i) == ((1 << k) + 1) * d.s


def test_case_pattern_32(ctx32):
    decs = expsum.resolve_all(ctx32)
    by = Counter((d.case_tag, d.s) for d in decs)
    assert by == {(CaseTag.CASE1_B0, -256): 1, (CaseTag.CASE2_Z0, 0): 15,
                  (CaseTag.CASE3_ZNZ, -64): 21, (CaseTag.CASE3_ZNZ, 64): 26}
    for d in decs:
        if d.case_tag is not CaseTag.CASE3_ZNZ:
            assert d.s_i == [-64] * 4 and d.t == -4
        big = [abs(x) == 256 for x in d.s_i]
        assert sum(big) in (0, 2)
        assert (d.s == 64) == (sum(big) == 2)
        if d.s == 64:
            assert d.eps == 1 and d.t == -2


def test_resolve_single(ctx32):
    dec = expsum.resolve_S(ctx32, ctx32.field.from_log(65))
    assert dec.agrees
    with pytest.raises(errors.ArgNotInSubfield):
        expsum.resolve_S(ctx32, 0)


def test_modular_predictor_rejects_ambiguity():
    tp = TowerParams(2, 3)
    with pytest.raises(errors.DivisibilityViolation):
        expsum.modular_predictor(tp, CaseTag.CASE3_ZNZ, [16, 1, 1, 1])


@pytest.mark.parametrize("n,k,want", [
    (3, 2, {-257: 1, -65: 21, -1: 15, 63: 26}),
    (5, 2, {-4097: 17, -1025: 341, -1: 255, 1023: 410}),
    (3, 3, {-4097: 1, -513: 219, -1: 63, 511: 228}),
])
def test_predicted_spectrum(n, k, want):
    sp = expsum.predicted_spectrum(TowerParams(k, n))
    assert sp.counts == want
    assert sp.total == (1 << n * k) - 1 and sp.power_sum() == 1


def test_k1():
    tp = TowerParams(1, 3)
    with pytest.raises(errors.DegenerateK1):
        expsum.predicted_spectrum(tp)
    sp = expsum.k1_spectrum(tp)
    assert sp.counts == {-17: 1, -1: 3, 7: 3} and sp.power_sum() == 1
    for n in (5, 7, 9):
        sp = expsum.k1_spectrum(TowerParams(1, n))
        assert sp.power_sum() == 1 and sp.n_values == 3
    with pytest.raises(errors.InvalidParams):
        expsum.k1_spectrum(TowerParams(2, 3))


@pytest.mark.parametrize("n,k", [(3, 1), (3, 2), (5, 1), (3, 3), (5, 2)])
def test_verify_distribution(fields, n, k):
    rep = expsum.verify_distribution(expsum.make_context(fields(n, k)))
    assert rep.ok, rep.to_dict()
    assert rep.case_counts == rep.expected_case_counts


def test_verify_report_collects_mismatch(f32, ctx32, monkeypatch):
    fake = seqcorr.Spectrum({-1: 63}, 12, 13)
    monkeypatch.setattr(expsum, "expected_spectrum", lambda tp: fake)
    rep = expsum.verify_distribution(ctx32, decompose=False)
    assert not rep.ok
    assert rep.to_dict()["first_mismatch"]["check"] == "spectrum_time"
