"""
Approximate GCD of univariate polynomials by constrained minimization
(gradient projection and the modified Newton iteration).

>>> from gpgcd import UniPoly, gpgcd
>>> r = gpgcd(UniPoly([1, -6, 5]), UniPoly([1, -6.3, 5.72]), 1)
>>> round(r.perturbation, 6)
0.021594
"""

from .encodings import COMPLEX, COMPLEX_MONIC, REAL, REAL_MONIC, EncodingKind
from .extraction import ApproxGcdResult, extract, gpgcd, least_squares_division, roots
from .kernels import RankDeficiency
from .optimizer import SolverConfig
from .polynomial import UniPoly, perturbation, relative_error

__version__ = '0.1.0'

__all__ = [
    'UniPoly', 'gpgcd', 'ApproxGcdResult', 'SolverConfig', 'EncodingKind',
    'REAL', 'COMPLEX', 'REAL_MONIC', 'COMPLEX_MONIC', 'RankDeficiency',
    'extract', 'least_squares_division', 'roots', 'perturbation', 'relative_error',
]
