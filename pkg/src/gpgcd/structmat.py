"""
Convolution, Sylvester and subresultant matrices.

Every constructor accepts either a :class:`~gpgcd.polynomial.UniPoly` or a
raw coefficient array (highest degree first, taken verbatim, so a zero
leading entry still counts toward the degree).  Complex inputs are
returned as the real block embedding ``[[M1, -M2], [M2, M1]]`` of
``M1 + i*M2`` unless ``embed=False`` is passed.
"""

import numpy as np

from .polynomial import UniPoly

__all__ = [
    'convolution_matrix', 'sylvester_matrix', 'subresultant_matrix',
    'monic_subresultant_matrix', 'embed_complex',
]


def _coeffs(p):
    c = p.coeffs if isinstance(p, UniPoly) else np.atleast_1d(np.asarray(p))
    if c.ndim != 1 or c.size == 0:
        raise ValueError('expected a nonempty coefficient vector')
    return c


def embed_complex(M):
    """Real ``2r x 2c`` embedding of a complex ``r x c`` matrix."""
    M = np.asarray(M)
    M1, M2 = M.real, M.imag
    return np.block([[M1, -M2], [M2, M1]])


def _conv(c, k):
    n = c.size - 1
    C = np.zeros((n + k + 1, k + 1), dtype=c.dtype)
    for j in range(k + 1):
        C[j:j + n + 1, j] = c
    return C


def convolution_matrix(p, k, split=False):
    """``C_k(p)``: the ``(deg p + k + 1) x (k + 1)`` multiplication matrix.

    ``C_k(p) @ coeffs(q) == coeffs(p * q)`` for any ``q`` of degree ``<= k``.
    For a complex ``p`` with ``split=True`` the pair (real part, imaginary
    part) is returned instead of the complex matrix.
    """
    c = _coeffs(p)
    if k < 0:
        raise ValueError('k must be nonnegative')
    C = _conv(c, k)
    if split and np.iscomplexobj(C):
        return C.real.copy(), C.imag.copy()
    return C


def _subres(f, g, j):
    m, n = f.size - 1, g.size - 1
    if not 0 < n <= m:
        raise ValueError(f'need 0 < deg g <= deg f, got deg f={m}, deg g={n}')
    if not 0 <= j < n:
        raise ValueError(f'need 0 <= j < deg g = {n}, got j={j}')
    dtype = np.result_type(f, g, float)
    return np.hstack([_conv(f.astype(dtype), n - j - 1), _conv(g.astype(dtype), m - j - 1)])


def subresultant_matrix(f, g, j, embed=True):
    """``N_j(f, g)``, shape ``(m+n-j) x (m+n-2j)``.

    Columns hold shifted coefficients of ``f`` (``n-j`` of them) followed
    by shifted coefficients of ``g`` (``m-j`` of them), so that
    ``N_j @ (a, b) == coeffs(A*f + B*g)`` with ``deg A < n-j`` and
    ``deg B < m-j``.
    """
    N = _subres(_coeffs(f), _coeffs(g), j)
    if embed and np.iscomplexobj(N):
        return embed_complex(N)
    return N


def sylvester_matrix(f, g, embed=True):
    return subresultant_matrix(f, g, 0, embed=embed)


def monic_subresultant_matrix(f, g, d, embed=True):
    """Reduced matrix ``N'_{d-1}`` for monic ``f`` and ``g``.

    Obtained from ``N_{d-1}(f, g)`` by subtracting column ``n-d+1`` from
    the first column and deleting the first row and column ``n-d+1``.
    Its product with ``(a_{n-d}, ..., a_0, b_{m-d-1}, ..., b_0)`` equals
    rows ``2..`` of ``N_{d-1} @ v`` under the substitution
    ``b_{m-d} = -a_{n-d}``.  Shape ``(m+n-d) x (m+n-2d+1)``.
    """
    fc, gc = _coeffs(f), _coeffs(g)
    if fc[0] != 1 or gc[0] != 1:
        raise ValueError('monic subresultant matrix needs monic f and g')
    n = gc.size - 1
    if not 0 < d <= n:
        raise ValueError(f'need 0 < d <= deg g = {n}, got d={d}')
    N = _subres(fc, gc, d - 1)
    col_b = n - d + 1
    N[:, 0] -= N[:, col_b]
    N = np.delete(N[1:], col_b, axis=1)
    if embed and np.iscomplexobj(N):
        return embed_complex(N)
    return N
