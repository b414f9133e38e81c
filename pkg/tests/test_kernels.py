"""Both backends must produce identical results."""
import os
import subprocess
import sys

import numpy as np
import pytest

from xcorr4 import kernels, seqcorr

numba_only = pytest.mark.skipif("numba" not in kernels.available(), reason="numba missing")


@pytest.fixture(scope="module")
def mods():
    return kernels.module("numpy"), kernels.module("numba")


@numba_only
@pytest.mark.parametrize("m", [4, 11, 16])
def test_exp_table(mods, m):
    from xcorr4.gf2core import DEFAULT_MODULI
    a, b = (mod.exp_table(DEFAULT_MODULI[m], m) for mod in mods)
    assert np.array_equal(a, b)


@numba_only
def test_correlation_kernels(mods, f32):
    pair = seqcorr.make_pair(f32, 13)
    w = seqcorr.folded_signs(pair)
    for fn in ("correlate_direct", "correlate_folded"):
        args = (pair.s, pair.v) if fn == "correlate_direct" else (w, pair.v)
        a, b = (getattr(mod, fn)(*args) for mod in mods)
        assert np.array_equal(a, b), fn


@numba_only
def test_expsum_kernels(mods, f32):
    hx = seqcorr._power_trace_table(f32, 13)
    elems = f32.subfield_elements(6)[1:]
    la = f32.log[elems].astype(np.int64)
    u = seqcorr.short_sequence(f32)
    offs = np.concatenate([[-1], la])
    a, b = (mod.expsum_field(f32.trace_table, f32.log, hx, la) for mod in mods)
    assert np.array_equal(a, b)
    a, b = (mod.expsum_log(f32.trace_table, u, offs, 5) for mod in mods)
    assert np.array_equal(a, b)


def test_backend_selection():
    assert kernels.BACKEND in kernels.available()
    with pytest.raises(ValueError):
        kernels.module("cuda")


def test_env_flag_selects_numpy():
    code = "from xcorr4 import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, XCORR4_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
    env["XCORR4_BACKEND"] = "fortran"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode != 0
