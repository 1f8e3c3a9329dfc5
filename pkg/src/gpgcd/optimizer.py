"""
Equality-constrained minimization by gradient projection (with explicit
restoration) and by the modified Newton iteration.

Problems are supplied as callables for the objective gradient, the
constraint vector ``q(x)`` and its Jacobian.  Both solvers stop when the
Euclidean norm of the search direction drops below ``epsilon``.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .kernels import RANK_TOL, RankDeficiency, least_squares_min_norm, pinv_apply, saddle_solve

__all__ = [
    'ConstrainedProblem', 'SolverConfig', 'SolverState', 'NoRestoration',
    'project_direction', 'restore', 'kkt_check',
    'solve_gradient_projection', 'solve_modified_newton', 'solve',
]

# termination reasons
STEP_SMALL = 'step_small'
MAX_ITER = 'max_iter'
RANK_DEFICIENT = 'rank_deficient'
DIVERGED = 'diverged'
NO_RESTORATION = 'no_restoration'

DIVERGENCE_FACTOR = 1e8


class NoRestoration(RuntimeError):
    """Restoration did not bring ``||q||`` below tolerance."""

    def __init__(self, msg, y=None, residual=None):
        super().__init__(msg)
        self.y = y
        self.residual = residual


@dataclass(frozen=True)
class ConstrainedProblem:
    """Minimize ``f(x)`` subject to ``q(x) = 0``.

    ``constraint_scale`` multiplies ``restoration_tol``: restoration stops
    once ``||q|| <= restoration_tol * constraint_scale``.
    """
    n_vars: int
    n_constraints: int
    eval_gradient: Callable[[np.ndarray], np.ndarray]
    eval_constraints: Callable[[np.ndarray], np.ndarray]
    eval_jacobian: Callable[[np.ndarray], np.ndarray]
    constraint_scale: float = 1.0

    def __post_init__(self):
        if self.n_constraints > self.n_vars:
            raise ValueError('more constraints than variables')


@dataclass(frozen=True)
class SolverConfig:
    epsilon: float = 1e-8
    max_iterations: int = 100
    step_width: float = 1.0
    method: str = 'modified_newton'
    restoration_tol: float = 1e-12
    restoration_max: int = 10
    kkt_tol: float = 1e-6
    backtracking: bool = False
    rank_tol: float = RANK_TOL

    def __post_init__(self):
        if self.method not in ('modified_newton', 'gradient_projection'):
            raise ValueError(f'unknown method {self.method!r}')
        if not 0 < self.step_width <= 1:
            raise ValueError('step_width must lie in (0, 1]')
        for name in ('epsilon', 'restoration_tol', 'kkt_tol'):
            if not getattr(self, name) > 0:
                raise ValueError(f'{name} must be positive')
        if self.max_iterations < 1 or self.restoration_max < 1:
            raise ValueError('iteration limits must be positive')


@dataclass
class SolverState:
    x: np.ndarray
    d: Optional[np.ndarray] = None
    lam: Optional[np.ndarray] = None
    iterations: int = 0
    converged: bool = False
    termination: Optional[str] = None
    stationarity: float = float('nan')
    feasibility: float = float('nan')
    kkt_satisfied: bool = False
    message: str = ''
    restorations: list = field(default_factory=list)


def project_direction(problem, x, rank_tol=RANK_TOL):
    """``-P(x) grad f(x)`` with ``P = I - J^+ J`` the projector onto ``ker J``."""
    g = problem.eval_gradient(x)
    J = problem.eval_jacobian(x)
    return -(g - pinv_apply(J, J @ g, rank_tol))


def restore(problem, y, cfg):
    """Newton iteration ``y <- y - J(y)^+ q(y)`` onto ``q = 0``.

    Returns
    -------
    y : ndarray
    residual : float
        ``||q(y)||_2`` at the returned point.
    steps : int
        Number of correction steps taken.

    Raises
    ------
    NoRestoration
        If the residual is still above tolerance after ``restoration_max``
        steps.
    """
    tol = cfg.restoration_tol * problem.constraint_scale
    y = np.array(y, dtype=float)
    q = problem.eval_constraints(y)
    res = np.linalg.norm(q)
    steps = 0
    while res > tol:
        if steps == cfg.restoration_max:
            raise NoRestoration(f'||q|| = {res:.3e} after {steps} restoration steps', y, res)
        y = y - pinv_apply(problem.eval_jacobian(y), q, cfg.rank_tol)
        q = problem.eval_constraints(y)
        res = np.linalg.norm(q)
        steps += 1
        if not np.isfinite(res):
            raise NoRestoration('restoration produced non-finite values', y, res)
    return y, float(res), steps


def kkt_check(problem, x, lam, cfg):
    """First-order optimality residuals at ``x``.

    When ``lam`` is None the least-squares multiplier ``J^T lam ~ grad`` is
    used.  Returns ``(stationarity, feasibility, satisfied)``.
    """
    g = problem.eval_gradient(x)
    q = problem.eval_constraints(x)
    if problem.n_constraints == 0:
        stat = np.linalg.norm(g)
    else:
        J = problem.eval_jacobian(x)
        if lam is None:
            lam = least_squares_min_norm(J.T, g)
        stat = np.linalg.norm(g - J.T @ lam)
    feas = np.linalg.norm(q)
    bound = cfg.kkt_tol * (1.0 + np.linalg.norm(g))
    return float(stat), float(feas), bool(stat <= bound and feas <= bound)


def _diverged(x, x0_norm):
    return not np.all(np.isfinite(x)) or np.linalg.norm(x) > DIVERGENCE_FACTOR * (1.0 + x0_norm)


def _step_width(problem, x, d, cfg):
    alpha = cfg.step_width
    if not cfg.backtracking:
        return alpha
    base = np.linalg.norm(problem.eval_constraints(x))
    for _ in range(30):
        if np.linalg.norm(problem.eval_constraints(x + alpha * d)) <= base:
            break
        alpha *= 0.5
    return alpha


def _finish(problem, state, cfg):
    if np.all(np.isfinite(state.x)):
        try:
            lam = state.lam if state.lam is not None else None
            state.stationarity, state.feasibility, state.kkt_satisfied = kkt_check(problem, state.x, lam, cfg)
        except (np.linalg.LinAlgError, ValueError):
            pass
    return state


def solve_gradient_projection(problem, x0, cfg, callback=None):
    """Gradient projection with restoration after every step.

    ``callback(k, x, d)`` is invoked for every computed direction.
    """
    x = np.array(x0, dtype=float)
    x0_norm = np.linalg.norm(x)
    state = SolverState(x=x)
    try:
        if np.linalg.norm(problem.eval_constraints(x)) > cfg.restoration_tol * problem.constraint_scale:
            x, _, steps = restore(problem, x, cfg)
            state.restorations.append(steps)
        state.x = x
        while True:
            d = project_direction(problem, x, cfg.rank_tol)
            state.d = d
            if callback is not None:
                callback(state.iterations, x, d)
            state.iterations += 1
            if np.linalg.norm(d) < cfg.epsilon:
                state.converged, state.termination = True, STEP_SMALL
                break
            if state.iterations >= cfg.max_iterations:
                state.termination = MAX_ITER
                break
            y = x + _step_width(problem, x, d, cfg) * d
            x, _, steps = restore(problem, y, cfg)
            state.restorations.append(steps)
            state.x = x
            if _diverged(x, x0_norm):
                state.termination = DIVERGED
                break
    except RankDeficiency as exc:
        state.termination, state.message = RANK_DEFICIENT, str(exc)
    except NoRestoration as exc:
        state.termination, state.message = NO_RESTORATION, str(exc)
        if exc.y is not None and np.all(np.isfinite(exc.y)):
            state.x = exc.y
    return _finish(problem, state, cfg)


def solve_modified_newton(problem, x0, cfg, callback=None):
    """Modified Newton iteration: one saddle-point solve per step.

    ``callback(k, x, d)`` is invoked for every computed direction.
    """
    x = np.array(x0, dtype=float)
    x0_norm = np.linalg.norm(x)
    state = SolverState(x=x)
    try:
        while True:
            J = problem.eval_jacobian(x)
            g = problem.eval_gradient(x)
            q = problem.eval_constraints(x)
            if not (np.all(np.isfinite(J)) and np.all(np.isfinite(q))):
                state.termination = DIVERGED
                break
            d, lam = saddle_solve(J, g, q)
            state.d, state.lam = d, lam
            if callback is not None:
                callback(state.iterations, x, d)
            state.iterations += 1
            if np.linalg.norm(d) < cfg.epsilon:
                state.converged, state.termination = True, STEP_SMALL
                break
            if state.iterations >= cfg.max_iterations:
                state.termination = MAX_ITER
                break
            x_new = x + _step_width(problem, x, d, cfg) * d
            if _diverged(x_new, x0_norm):
                state.termination = DIVERGED
                break
            x = state.x = x_new
    except RankDeficiency as exc:
        state.termination, state.message = RANK_DEFICIENT, str(exc)
    return _finish(problem, state, cfg)


def solve(problem, x0, cfg, callback=None):
    if cfg.method == 'modified_newton':
        return solve_modified_newton(problem, x0, cfg, callback)
    return solve_gradient_projection(problem, x0, cfg, callback)
