"""
GCD recovery from a converged iterate and the end-to-end ``gpgcd`` driver.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import encodings as enc
from .kernels import least_squares_min_norm
from .optimizer import SolverConfig, solve
from .polynomial import UniPoly, as_poly, norm2_sq, perturbation, sub
from .structmat import _conv, embed_complex

__all__ = [
    'ApproxGcdResult', 'least_squares_division', 'extract', 'gpgcd', 'roots',
]

FROM_A_SIDE = 'from_A_side'
FROM_B_SIDE = 'from_B_side'


@dataclass
class ApproxGcdResult:
    """Output of :func:`gpgcd`.

    ``f_tilde == h * b`` and ``g_tilde == h * a`` hold by construction.
    """
    f_tilde: UniPoly
    g_tilde: UniPoly
    h: UniPoly
    a: UniPoly
    b: UniPoly
    perturbation: float = float('nan')
    iterations: int = 0
    converged: bool = False
    termination: Optional[str] = None
    kkt: tuple = (float('nan'), float('nan'))
    chosen_candidate: str = FROM_A_SIDE
    residues: tuple = (float('nan'), float('nan'))
    sigma_min_init: float = float('nan')
    message: str = ''
    x: Optional[np.ndarray] = field(default=None, repr=False)

    def common_zeros(self):
        return roots(self.h)


def roots(p):
    """Zeros of ``p`` from the eigenvalues of its companion matrix."""
    c = as_poly(p).coeffs
    if c.size < 2:
        return np.zeros(0, dtype=complex)
    n = c.size - 1
    C = np.zeros((n, n), dtype=np.result_type(c, float))
    C[0, :] = -c[1:] / c[0]
    C[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(C)


def least_squares_division(cofactor, target, d):
    """Degree-``d`` ``H`` minimizing ``||C_d(cofactor) h - target||_2``.

    The cofactor is left-padded with zeros when its stored degree is
    smaller than ``deg(target) - d``.  Complex data go through the real
    block embedding.
    """
    cof = cofactor.coeffs if isinstance(cofactor, UniPoly) else np.atleast_1d(np.asarray(cofactor))
    tgt = target.coeffs if isinstance(target, UniPoly) else np.atleast_1d(np.asarray(target))
    if not np.any(cof):
        raise ValueError('division by the zero polynomial')
    if d < 0:
        raise ValueError('d must be nonnegative')
    k = tgt.size - d
    if k < 1 or cof.size > k:
        raise ValueError(f'cannot divide a degree-{tgt.size - 1} target by a '
                         f'degree-{cof.size - 1} cofactor into degree {d}')
    cof = np.concatenate([np.zeros(k - cof.size, dtype=cof.dtype), cof])
    C = _conv(cof, d)
    if np.iscomplexobj(C) or np.iscomplexobj(tgt):
        C = np.asarray(C, dtype=complex)
        tgt = np.asarray(tgt, dtype=complex)
        h = least_squares_min_norm(embed_complex(C), np.concatenate([tgt.real, tgt.imag]))
        return UniPoly(h[:d + 1] + 1j * h[d + 1:], 'complex')
    return UniPoly(least_squares_min_norm(C, tgt), 'real')


def _residue(f_t, g_t, h, a, b):
    return norm2_sq(sub(f_t, h * b)) + norm2_sq(sub(g_t, h * a))


def extract(f_tilde, g_tilde, a, b, d):
    """GCD of ``f_tilde ~ h*b`` and ``g_tilde ~ h*a`` by least-squares division.

    Two candidates are formed, from ``a`` against ``g_tilde`` and from ``b``
    against ``f_tilde``; the one with the smaller residue
    ``||f_tilde - h b||^2 + ||g_tilde - h a||^2`` wins (``a`` side on ties),
    and the pair is replaced by ``h*b, h*a``.

    Returns
    -------
    dict with keys ``f_tilde, g_tilde, h, a, b, chosen_candidate, residues``.
    """
    f_tilde, g_tilde, a, b = (as_poly(p) for p in (f_tilde, g_tilde, a, b))
    if a.is_zero() and b.is_zero():
        raise ValueError('both cofactors are zero')
    cands, res = [], []
    for cof, tgt in ((a, g_tilde), (b, f_tilde)):
        try:
            h = least_squares_division(cof, tgt, d)
        except ValueError:
            cands.append(None)
            res.append(float('inf'))
            continue
        cands.append(h)
        res.append(_residue(f_tilde, g_tilde, h, a, b))
    if not any(np.isfinite(res)):
        raise ValueError('no finite GCD candidate')
    i = 0 if res[0] <= res[1] else 1
    h = cands[i]
    return dict(f_tilde=h * b, g_tilde=h * a, h=h, a=a, b=b,
                chosen_candidate=(FROM_A_SIDE, FROM_B_SIDE)[i], residues=tuple(res))


def _normalize_scale(h, a, b):
    # F-side cofactor made monic; products h*a, h*b are unchanged
    lc = b.lc
    if b.is_zero() or abs(lc) <= 1e-14 * np.sqrt(norm2_sq(b)):
        return h, a, b
    return h * lc, a / lc, b / lc


def _infer_kind(F, G):
    field = 'complex' if 'complex' in (F.field, G.field) else 'real'
    return enc.EncodingKind(field, False)


def gpgcd(F, G, d, kind=None, cfg=None, x0=None, callback=None):
    """Approximate GCD of degree ``d`` of ``F`` and ``G``.

    Parameters
    ----------
    F, G : UniPoly or array_like
        Inputs, coefficients highest degree first.  ``deg G > deg F`` is
        allowed; the pair is swapped internally.
    d : int
        Target GCD degree, ``0 < d <= min(deg F, deg G)``.
    kind : EncodingKind, optional
        Defaults to the inputs' field, leading coefficients free.
    cfg : SolverConfig, optional
    x0 : ndarray, optional
        Override of the SVD starting point (same layout).
    callback : callable, optional
        Forwarded to the solver.

    Returns
    -------
    ApproxGcdResult
        Non-converged runs are still extracted; see ``termination``.
    """
    F, G = as_poly(F), as_poly(G)
    kind = kind or _infer_kind(F, G)
    cfg = cfg or SolverConfig()
    if kind.is_complex:
        F, G = F.to_complex(), G.to_complex()
    elif 'complex' in (F.field, G.field):
        raise ValueError('complex inputs need a complex encoding')
    swapped = G.degree > F.degree
    if swapped:
        F, G = G, F
    if not 0 < d <= G.degree:
        raise ValueError(f'need 0 < d <= min degree = {G.degree}, got d={d}')
    if kind.monic and (F.lc != 1 or G.lc != 1):
        raise ValueError('monic encodings need monic F and G')

    x_init, L, sigma0 = enc.initialize(F, G, d, kind)
    if x0 is not None:
        x_init = np.asarray(x0, dtype=float)
    problem = enc.make_problem(F, G, L)
    state = solve(problem, x_init, cfg, callback)

    x = state.x
    f_t, g_t, A, B = enc.unpack(x, L)
    # A*Ft + B*Gt = 0 makes Ft = H*B and Gt = H*(-A)
    A_neg = -A
    message = state.message
    try:
        ex = extract(f_t, g_t, A_neg, B, d)
        h, a, b = _normalize_scale(ex['h'], ex['a'], ex['b'])
        f_out, g_out = h * b, h * a
        chosen, residues = ex['chosen_candidate'], ex['residues']
    except (ValueError, np.linalg.LinAlgError) as exc:
        h, a, b = UniPoly([np.nan], F.field), A_neg, B
        f_out, g_out = f_t, g_t
        chosen, residues = FROM_A_SIDE, (float('nan'), float('nan'))
        message = f'{message}; extraction failed: {exc}'.strip('; ')
    pert = perturbation(f_out, F, g_out, G) if _finite(f_out, g_out) else float('inf')
    if swapped:
        f_out, g_out, a, b = g_out, f_out, b, a
    return ApproxGcdResult(
        f_tilde=f_out, g_tilde=g_out, h=h, a=a, b=b,
        perturbation=pert,
        iterations=state.iterations,
        converged=state.converged,
        termination=state.termination,
        kkt=(state.stationarity, state.feasibility),
        chosen_candidate=chosen,
        residues=residues,
        sigma_min_init=sigma0,
        message=message,
        x=x,
    )


def _finite(*polys):
    return all(np.all(np.isfinite(p.coeffs)) for p in polys)
