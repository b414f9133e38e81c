"""Four-valued cross-correlation of m-sequences of different lengths.

Exact GF(2^m) arithmetic (m <= 24), the correlation spectrum under the
decimation d = (2^nk + 1)/(2^k + 1), and independent checks of every
ingredient of its closed-form distribution.
"""
from .errors import XCorrError
from .gf2core import DEFAULT_MODULI, MAX_DEGREE, Field, TowerParams, build_field
from .seqcorr import Spectrum, spectrum

__all__ = ["DEFAULT_MODULI", "MAX_DEGREE", "Field", "TowerParams", "Spectrum",
           "XCorrError", "build_field", "spectrum"]
__version__ = "0.1.0"
