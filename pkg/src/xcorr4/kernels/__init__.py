"""Hot loops, dispatched to numba or pure numpy.

The backend is fixed at import time from ``XCORR4_BACKEND`` (``numba`` or
``numpy``; default ``numba``). If numba cannot be imported the numpy path is
used silently. Both modules stay importable so the benchmark can compare them.
"""
import os

from . import _numpy

_requested = os.environ.get("XCORR4_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"XCORR4_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

impl = _numpy
if _requested == "numba":
    try:
        from . import _numba as impl
    except ImportError:  # pragma: no cover - numba is a declared dependency
        impl = _numpy

BACKEND = impl.NAME

exp_table = impl.exp_table
correlate_direct = impl.correlate_direct
correlate_folded = impl.correlate_folded
expsum_log = impl.expsum_log
expsum_field = impl.expsum_field
set_threads = impl.set_threads


def available():
    """Names of the backends importable in this process."""
    names = ["numpy"]
    try:
        from . import _numba  # noqa: F401
        names.insert(0, "numba")
    except ImportError:  # pragma: no cover
        pass
    return names


def module(name):
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba
        return _numba
    raise ValueError(f"unknown backend {name!r}")
