"""
Dense linear-algebra kernels: SVD, least squares, pseudo-inverse
application and the saddle-point solve used by the modified Newton step.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

__all__ = [
    'RANK_TOL', 'SADDLE_GROWTH_LIMIT', 'RankDeficiency', 'SvdResult', 'svd',
    'least_squares_min_norm', 'pinv_apply', 'saddle_solve',
]

RANK_TOL = 1e-10
# growth of the row-scaled saddle solution beyond which the matrix is singular
SADDLE_GROWTH_LIMIT = 1e10


class RankDeficiency(np.linalg.LinAlgError):
    """A matrix that must have full (row) rank is numerically rank deficient.

    ``ratio`` is ``sigma_min / sigma_max`` when it was computed, else ``None``.
    """

    def __init__(self, msg, ratio=None):
        super().__init__(msg)
        self.ratio = ratio


@dataclass(frozen=True)
class SvdResult:
    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray

    @property
    def smallest_right_vector(self):
        # last row of V^T: ties resolve to the last vector in nonincreasing order
        return self.vt[-1]

    @property
    def sigma_min(self):
        return self.s[-1]


def svd(M):
    """Thin SVD with singular values in nonincreasing order.

    For wide matrices the full ``V`` is returned so that a null vector
    is always available as the last right singular vector (with a
    padded zero singular value).
    """
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        raise ValueError('empty matrix')
    r, c = M.shape
    try:
        u, s, vt = sla.svd(M, full_matrices=c > r, lapack_driver='gesdd')
    except np.linalg.LinAlgError:
        u, s, vt = sla.svd(M, full_matrices=c > r, lapack_driver='gesvd')
    if c > r:
        s = np.concatenate([s, np.zeros(c - r)])
    return SvdResult(u, s, vt)


def least_squares_min_norm(M, b):
    """Minimum-norm minimizer of ``||M x - b||_2``.

    QR with column pivoting (LAPACK ``gelsy``); falls back to the SVD
    driver when the pivoted QR reports rank deficiency.
    """
    M = np.asarray(M, dtype=float)
    b = np.asarray(b, dtype=float)
    if M.shape[0] != b.shape[0]:
        raise ValueError(f'row mismatch: {M.shape[0]} vs {b.shape[0]}')
    x, _, rank, _ = sla.lstsq(M, b, lapack_driver='gelsy', check_finite=False)
    if rank < min(M.shape):
        x, _, _, _ = sla.lstsq(M, b, lapack_driver='gelsd', check_finite=False)
    return x


def pinv_apply(M, b, rank_tol=RANK_TOL):
    """``M^+ b`` for ``M`` of full row rank, via the SVD.

    Raises
    ------
    RankDeficiency
        If ``sigma_min / sigma_max <= rank_tol``.
    """
    M = np.asarray(M, dtype=float)
    b = np.asarray(b, dtype=float)
    if M.shape[0] > M.shape[1]:
        raise RankDeficiency('more rows than columns: no full row rank')
    u, s, vt = sla.svd(M, full_matrices=False)
    ratio = s[-1] / s[0] if s[0] > 0 else 0.0
    if not ratio > rank_tol:
        raise RankDeficiency(f'sigma_min/sigma_max = {ratio:.3e}', ratio)
    return vt.T @ ((u.T @ b) / s)


def saddle_solve(J, grad, q, growth_limit=SADDLE_GROWTH_LIMIT):
    """Solve ``[[I, -J^T], [J, 0]] (d, lam) = -(grad, q)``.

    The system is symmetrized with ``mu = -lam`` and factorized by
    LAPACK's Bunch-Kaufman ``sysv``.

    Ill-conditioned systems are accepted as long as the solution stays
    bounded.  The matrix is reported singular when the factorization
    breaks down, when the solution is not finite, or when the solution of
    the equivalent system with unit-norm rows of ``J``, ``(d, mu * ||J_i||)``,
    exceeds ``growth_limit * (1 + ||grad|| + ||q_i / ||J_i||  ||)``.
    Numerically dependent rows make that solution blow up, while a
    condition estimate alone cannot tell them apart from the badly
    scaled Jacobians of high-degree inputs.

    Returns
    -------
    d : ndarray
        Search direction.
    lam : ndarray
        Lagrange multipliers.

    Raises
    ------
    RankDeficiency
    """
    J = np.asarray(J, dtype=float)
    grad = np.asarray(grad, dtype=float)
    q = np.asarray(q, dtype=float)
    mc, nv = J.shape
    if mc > nv:
        raise RankDeficiency('more constraints than variables')
    r = np.linalg.norm(J, axis=1)
    if mc and not np.all(r > 0):
        raise RankDeficiency('zero row in the constraint Jacobian', 0.0)
    K = np.zeros((nv + mc, nv + mc))
    K[:nv, :nv] = np.eye(nv)
    K[:nv, nv:] = J.T
    K[nv:, :nv] = J
    rhs = -np.concatenate([grad, q])
    _, _, sol, info = lapack.dsysv(K, rhs)
    if info > 0:
        raise RankDeficiency(f'singular saddle-point matrix (zero pivot {info})')
    if info < 0:
        raise ValueError(f'dsysv: illegal argument {-info}')
    if not np.all(np.isfinite(sol)):
        raise RankDeficiency('non-finite saddle-point solution')
    d, mu = sol[:nv], sol[nv:]
    growth = (np.linalg.norm(d) + np.linalg.norm(mu * r)) / (
        1.0 + np.linalg.norm(grad) + np.linalg.norm(q / r))
    if not growth <= growth_limit:
        raise RankDeficiency(f'saddle-point solution grew by {growth:.3e}: '
                             'numerically dependent constraints')
    return d, -mu
