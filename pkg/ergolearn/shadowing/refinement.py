"""Newton refinement of pseudo-orbits into nearby true orbits.

Each iteration solves the linearized orbit equations

    dF(y_t) dv_t - dv_{t+1} = -(F(y_t) - y_{t+1}),    t = 0, ..., n - 1,

which leave d of the (n + 1) d unknowns free, by their least-norm solution
dv = M^T w with (M M^T) w = -G. The normal matrix is block tridiagonal and is
factorized by a sparse LU.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)


@dataclass
class ShadowResult:
    states: np.ndarray
    corrections: np.ndarray
    shadow_distance: float
    residual: float
    converged: bool
    iterations: int
    residual_history: list = field(default_factory=list)
    min_pivot: float = float('nan')

    @property
    def near_singular(self):
        """bool: Whether some factorization had a pivot below the warning level.

        """

        return bool(self.min_pivot < c.SHADOW_PIVOT_WARNING)

    def to_dict(self):
        return {'shadow_distance': self.shadow_distance, 'residual': self.residual, 'converged': self.converged,
                'iterations': self.iterations, 'residual_history': list(self.residual_history),
                'min_pivot': self.min_pivot, 'near_singular': self.near_singular}


def orbit_residuals(system, states):
    """Evaluates G_t = F(y_t) - y_{t+1}.

    Args:
        system (System): Reference system.
        states (np.array): Sequence of shape (n + 1, d).

    Returns:
        The (n, d) residuals.

    """

    return np.stack([system.step(y) for y in states[:-1]]) - states[1:]


def _branch_jacobian(system, y):
    try:
        return system.jacobian(y)

    except ex.NonSmoothPoint:
        # Right-hand branch when the iterate sits on a kink
        logger.debug('Iterate on a kink, using the neighbouring branch.')

        return system.jacobian(y + 2 * c.KINK_TOLERANCE)


def orbit_operator(jacobians):
    """Assembles the sparse matrix M of the linearized orbit equations.

    Args:
        jacobians (np.array): Jacobians dF(y_t) of shape (n, d, d).

    Returns:
        A CSR matrix of shape (n d, (n + 1) d).

    """

    n, d, _ = jacobians.shape

    zeros = sparse.csr_matrix((n * d, d))

    A = sparse.hstack([sparse.block_diag(list(jacobians), format='csr'), zeros], format='csr')
    shift = sparse.hstack([zeros, sparse.identity(n * d, format='csr')], format='csr')

    return (A - shift).tocsr()


def _newton_direction(system, states, residuals):
    """Solves for the least-norm Newton correction.

    Returns:
        A tuple holding the correction, of the same shape as the states, and the smallest pivot.

    """

    jacobians = np.stack([_branch_jacobian(system, y) for y in states[:-1]])
    M = orbit_operator(jacobians)

    try:
        lu = splu((M @ M.T).tocsc())

    except RuntimeError as error:
        e = f'Linearized orbit equations are singular ({error}).'

        logger.error(e)

        raise ex.SingularLinearization(e) from error

    pivot = float(np.min(np.abs(lu.U.diagonal())))
    w = lu.solve(-residuals.ravel())

    if not np.all(np.isfinite(w)):
        e = 'Linearized orbit equations gave a non-finite solution.'

        logger.error(e)

        raise ex.SingularLinearization(e)

    return (M.T @ w).reshape(states.shape), pivot


def _max_norm(residuals):
    return float(np.max(np.linalg.norm(residuals, axis=1)))


def _try_residual(system, states):
    try:
        residual = _max_norm(orbit_residuals(system, states))

    except ex.NonFiniteState:
        return np.inf

    return residual if np.isfinite(residual) else np.inf


def refine_shadow(truth, pseudo, tol=c.SHADOW_TOL, max_iter=c.SHADOW_MAX_ITER):
    """Refines a pseudo-orbit into a true orbit of the reference system by damped Newton.

    Steps that do not reduce the largest residual are halved (at most
    `SHADOW_MAX_HALVINGS` times), which also covers iterates crossing a kink.

    Args:
        truth (System): Reference system.
        pseudo (PseudoOrbit): Sequence to be shadowed.
        tol (float): Target largest residual ‖F(y_t) - y_{t+1}‖.
        max_iter (int): Maximum number of Newton iterations.

    Returns:
        A converged ShadowResult.

    """

    x = np.asarray(pseudo.states, dtype=np.float64)

    if x.ndim != 2 or x.shape[0] < 3 or x.shape[1] != truth.n_dim:
        e = f'Pseudo-orbit should have shape (n + 1, {truth.n_dim}) with n >= 2, got {x.shape}.'

        logger.error(e)

        raise ex.ShapeMismatch(e)

    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(pseudo.defects)):
        e = 'Pseudo-orbit states and defects should be finite.'

        logger.error(e)

        raise ex.NonFiniteState(e)

    logger.info('Refining pseudo-orbit of %d steps ...', x.shape[0] - 1)

    y = x.copy()
    residuals = orbit_residuals(truth, y)
    residual = _max_norm(residuals)
    history, min_pivot = [residual], np.inf
    iterations = 0

    while residual >= tol and iterations < max_iter:
        direction, pivot = _newton_direction(truth, y, residuals)
        min_pivot = min(min_pivot, pivot)
        iterations += 1

        alpha = 1.0
        for _ in range(c.SHADOW_MAX_HALVINGS + 1):
            candidate = y + alpha * direction
            trial = _try_residual(truth, candidate)

            if trial < residual:
                break

            alpha *= c.SHADOW_DAMPING

        else:
            logger.warning('Newton step stalled at residual %s.', residual)

            break

        y = candidate
        residuals = orbit_residuals(truth, y)
        residual = _max_norm(residuals)
        history.append(residual)

        logger.debug('Iteration %d: residual = %s | step = %s.', iterations, residual, alpha)

    if min_pivot < c.SHADOW_PIVOT_WARNING:
        logger.warning('Smallest pivot %s: the linearization is nearly singular.', min_pivot)

    corrections = y - x

    result = ShadowResult(
        states=y,
        corrections=corrections,
        shadow_distance=float(np.max(np.linalg.norm(corrections, axis=1))),
        residual=residual,
        converged=bool(residual < tol),
        iterations=iterations,
        residual_history=history,
        min_pivot=float(min_pivot) if np.isfinite(min_pivot) else float('nan'))

    if not result.converged:
        e = f'Shadow refinement did not reach {tol} in {iterations} iterations (residual {residual}).'

        logger.error(e)

        raise ex.NoConvergence(e, result=result)

    logger.info('Shadow found: distance = %s | residual = %s | iterations = %d.', result.shadow_distance,
                residual, iterations)

    return result
