"""
Variable layouts, objective gradient, constraints and Jacobians of the
approximate-GCD minimization, for real/complex coefficients with or
without fixed (monic) leading coefficients.

The unknowns are the coefficients of the perturbed pair ``Ft, Gt`` and of
cofactors ``A`` (``deg <= n-d``) and ``B`` (``deg <= m-d``) constrained by
``A*Ft + B*Gt = 0`` and ``||A||^2 + ||B||^2 = 1``.  Variable order:

* real:     ``Ft, Gt, A, B``
* complex:  ``Re Ft, Re Gt, Im Ft, Im Gt, Re A, Re B, Im A, Im B``

each block highest degree first.  Monic layouts drop the leading entries
of ``Ft`` and ``Gt`` (fixed to 1) and the leading entry of ``B``, which is
tied to ``b_{m-d} = -a_{n-d}``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .kernels import RANK_TOL, svd
from .optimizer import ConstrainedProblem
from .polynomial import UniPoly
from .structmat import _conv, _subres, embed_complex, monic_subresultant_matrix

__all__ = [
    'EncodingKind', 'VariableLayout', 'layout', 'pack', 'unpack',
    'objective_gradient', 'objective', 'constraints', 'jacobian',
    'initialize', 'full_rank_diagnostic', 'make_problem', 'input_arrays',
    'REAL', 'COMPLEX', 'REAL_MONIC', 'COMPLEX_MONIC',
]


@dataclass(frozen=True)
class EncodingKind:
    field: str = 'real'
    monic: bool = False

    def __post_init__(self):
        if self.field not in ('real', 'complex'):
            raise ValueError(f'unknown field {self.field!r}')

    @property
    def is_complex(self):
        return self.field == 'complex'

    def __str__(self):
        return f"{self.field}{'-monic' if self.monic else ''}"


REAL = EncodingKind('real', False)
COMPLEX = EncodingKind('complex', False)
REAL_MONIC = EncodingKind('real', True)
COMPLEX_MONIC = EncodingKind('complex', True)


@dataclass(frozen=True)
class VariableLayout:
    kind: EncodingKind
    m: int
    n: int
    d: int
    n_vars: int
    n_constraints: int
    slices: dict

    @property
    def dtype(self):
        return complex if self.kind.is_complex else float

    @property
    def fg_size(self):
        """Number of leading variables that carry coefficients of Ft, Gt."""
        s = self.slices
        last = s['g_im'] if self.kind.is_complex else s['g']
        return last.stop


def layout(kind, m, n, d):
    if not 0 < d <= n <= m:
        raise ValueError(f'need 0 < d <= n <= m, got m={m}, n={n}, d={d}')
    skip = 1 if kind.monic else 0
    sizes = {'f': m + 1 - skip, 'g': n + 1 - skip, 'a': n - d + 1, 'b': m - d + 1 - skip}
    if kind.is_complex:
        names = ['f_re', 'g_re', 'f_im', 'g_im', 'a_re', 'b_re', 'a_im', 'b_im']
    else:
        names = ['f', 'g', 'a', 'b']
    slices, pos = {}, 0
    for name in names:
        k = sizes[name[0]]
        slices[name] = slice(pos, pos + k)
        pos += k
    rows = m + n - d + 1 - skip
    n_cons = (2 * rows if kind.is_complex else rows) + 1
    return VariableLayout(kind, m, n, d, pos, n_cons, slices)


def _full_blocks(x, L):
    """Full coefficient arrays ``(f, g, a, b)`` encoded in ``x``."""
    s = L.slices
    if L.kind.is_complex:
        f = x[s['f_re']] + 1j * x[s['f_im']]
        g = x[s['g_re']] + 1j * x[s['g_im']]
        a = x[s['a_re']] + 1j * x[s['a_im']]
        b = x[s['b_re']] + 1j * x[s['b_im']]
    else:
        f, g, a, b = x[s['f']], x[s['g']], x[s['a']], x[s['b']]
    if L.kind.monic:
        one = np.ones(1, dtype=L.dtype)
        f = np.concatenate([one, f])
        g = np.concatenate([one, g])
        b = np.concatenate([-a[:1], b])
    return f, g, a, b


def _padded(p, length, dtype, what):
    c = p.coeffs if isinstance(p, UniPoly) else np.atleast_1d(np.asarray(p))
    if isinstance(p, UniPoly):
        if p.degree >= length and not p.is_zero():
            raise ValueError(f'{what}: degree {p.degree} exceeds {length - 1}')
        c = p.padded(length) if not p.is_zero() else np.zeros(length)
    elif c.size != length:
        raise ValueError(f'{what}: expected {length} coefficients, got {c.size}')
    if dtype is float and np.iscomplexobj(c):
        if np.any(c.imag != 0):
            raise ValueError(f'{what}: complex coefficients in a real layout')
        c = c.real
    return np.asarray(c, dtype=dtype)


def _assemble(f, g, a, b, L):
    """Inverse of :func:`_full_blocks` for full coefficient arrays."""
    if L.kind.monic:
        f, g, b = f[1:], g[1:], b[1:]
    if L.kind.is_complex:
        parts = [f.real, g.real, f.imag, g.imag, a.real, b.real, a.imag, b.imag]
    else:
        parts = [f, g, a, b]
    return np.concatenate(parts).astype(float)


def pack(f_t, g_t, a, b, L):
    """Variable vector for the polynomials ``Ft, Gt, A, B``.

    Monic layouts require monic ``Ft, Gt`` and ``b_{m-d} = -a_{n-d}``.
    """
    m, n, d = L.m, L.n, L.d
    f = _padded(f_t, m + 1, L.dtype, 'Ft')
    g = _padded(g_t, n + 1, L.dtype, 'Gt')
    av = _padded(a, n - d + 1, L.dtype, 'A')
    bv = _padded(b, m - d + 1, L.dtype, 'B')
    if L.kind.monic:
        if f[0] != 1 or g[0] != 1:
            raise ValueError('monic layout needs monic Ft and Gt')
        if not np.isclose(bv[0], -av[0], rtol=1e-12, atol=1e-14):
            raise ValueError('monic layout needs b_{m-d} = -a_{n-d}')
    return _assemble(f, g, av, bv, L)


def unpack(x, L):
    """``(Ft, Gt, A, B)`` as :class:`UniPoly`, reinstating eliminated entries."""
    field = L.kind.field
    return tuple(UniPoly(c, field) for c in _full_blocks(np.asarray(x, dtype=float), L))


def input_arrays(F, G, L):
    """Input coefficient arrays in the layout's field, checked against its degrees."""
    f = _padded(F, L.m + 1, L.dtype, 'F')
    g = _padded(G, L.n + 1, L.dtype, 'G')
    return f, g


def _target(F, G, L):
    f, g = input_arrays(F, G, L)
    a = np.zeros(L.n - L.d + 1, dtype=L.dtype)
    b = np.zeros(L.m - L.d + 1, dtype=L.dtype)
    return _assemble(f, g, a, b, L)


def objective_gradient(x, inputs, L):
    """Gradient of half the squared perturbation: coefficient differences
    on the ``Ft, Gt`` blocks, zero on the cofactor blocks."""
    t = _target(*inputs, L) if isinstance(inputs, tuple) else inputs
    grad = np.asarray(x, dtype=float) - t
    grad[L.fg_size:] = 0.0
    return grad


def objective(x, inputs, L):
    """Squared perturbation ``||Ft - F||^2 + ||Gt - G||^2``."""
    r = objective_gradient(x, inputs, L)
    return float(r @ r)


def _cofactor_vector(a, b, L):
    return np.concatenate([a, b[1:]]) if L.kind.monic else np.concatenate([a, b])


def _stack_rows(r):
    return np.concatenate([r.real, r.imag]) if np.iscomplexobj(r) else r


def _subres_block(f, g, L):
    if L.kind.monic:
        return monic_subresultant_matrix(f, g, L.d, embed=False)
    return _subres(f, g, L.d - 1)


def constraints(x, L):
    """``q(x)``: normalization row first, then the subresultant rows
    (real parts above imaginary parts in complex layouts)."""
    f, g, a, b = _full_blocks(np.asarray(x, dtype=float), L)
    v = _cofactor_vector(a, b, L)
    rows = _subres_block(f, g, L) @ v
    q0 = np.sum(np.abs(v) ** 2) - 1.0
    if L.kind.monic:
        q0 += abs(a[0]) ** 2
    return np.concatenate([[q0], _stack_rows(rows)])


def jacobian(x, L):
    f, g, a, b = _full_blocks(np.asarray(x, dtype=float), L)
    v = _cofactor_vector(a, b, L)
    M_fg = np.hstack([_conv(a, L.m), _conv(b, L.n)])
    if L.kind.monic:
        M_fg = np.hstack([_conv(a, L.m)[1:, 1:], _conv(b, L.n)[1:, 1:]])
    M_ab = _subres_block(f, g, L)
    top = 2.0 * v
    if L.kind.monic:
        top[0] *= 2.0
    if L.kind.is_complex:
        body = np.hstack([embed_complex(M_fg), embed_complex(M_ab)])
        top = np.concatenate([top.real, top.imag])
    else:
        body = np.hstack([M_fg, M_ab])
    J = np.empty((L.n_constraints, L.n_vars))
    J[0, :L.fg_size] = 0.0
    J[0, L.fg_size:] = top
    J[1:] = body
    return J


def _degrees(F, G):
    df = F.degree if isinstance(F, UniPoly) else np.atleast_1d(F).size - 1
    dg = G.degree if isinstance(G, UniPoly) else np.atleast_1d(G).size - 1
    return df, dg


def initialize(F, G, d, kind):
    """Starting point: inputs plus the smallest right singular vector of the
    (reduced, embedded) subresultant matrix as cofactors.

    Returns
    -------
    x0 : ndarray
    L : VariableLayout
    sigma_min : float
        Smallest singular value, i.e. ``||N v||`` at the start.
    """
    m, n = _degrees(F, G)
    L = layout(kind, m, n, d)
    f, g = input_arrays(F, G, L)
    if kind.monic:
        if f[0] != 1 or g[0] != 1:
            raise ValueError('monic encodings need monic F and G')
        N = monic_subresultant_matrix(f, g, d, embed=False)
    else:
        N = _subres(f, g, d - 1)
    if kind.is_complex:
        N = embed_complex(N)
    res = svd(N)
    v = res.smallest_right_vector
    fg = _target(F, G, L)[:L.fg_size]
    return np.concatenate([fg, v]), L, float(res.sigma_min)


def full_rank_diagnostic(x, L, rank_tol=RANK_TOL):
    """``(sigma_min / sigma_max of the Jacobian, ratio > rank_tol)``."""
    s = sla.svdvals(jacobian(x, L))
    ratio = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    return ratio, ratio > rank_tol


def make_problem(F, G, L):
    """:class:`ConstrainedProblem` for approximating ``F, G`` in layout ``L``."""
    t = _target(F, G, L)
    f, g = input_arrays(F, G, L)
    scale = max(1.0, float(np.linalg.norm(f) + np.linalg.norm(g)))
    return ConstrainedProblem(
        n_vars=L.n_vars,
        n_constraints=L.n_constraints,
        eval_gradient=lambda x: objective_gradient(x, t, L),
        eval_constraints=lambda x: constraints(x, L),
        eval_jacobian=lambda x: jacobian(x, L),
        constraint_scale=scale,
    )
