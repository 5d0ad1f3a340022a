"""Pseudo-orbits and their state and Jacobian defects against the reference system.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.ergodic.comparison import model_orbit

logger = l.get_logger(__name__)


def _summary(values):
    finite = values[np.isfinite(values)]

    if finite.size == 0:
        return {'max': None, 'mean': None}

    return {'max': float(finite.max()), 'mean': float(finite.mean())}


@dataclass
class PseudoOrbit:
    """A PseudoOrbit holds a sequence of states together with its one-step defects
    ‖F(x_t) - x_{t+1}‖ and, when a surrogate produced it, its Jacobian defects
    ‖dF(x_t) - dF_nn(x_t)‖ (NaN where dF is undefined).

    """

    states: np.ndarray
    defects: np.ndarray
    jac_defects: Optional[np.ndarray] = None

    def __len__(self):
        return self.states.shape[0]

    @property
    def n_steps(self):
        """int: Number of transitions.

        """

        return self.states.shape[0] - 1

    @classmethod
    def from_states(cls, system, states):
        """Wraps an arbitrary sequence, e.g., a noisy reference orbit, as a pseudo-orbit.

        Args:
            system (System): Reference system.
            states (np.array): Sequence of shape (n + 1, d).

        Returns:
            A PseudoOrbit without Jacobian defects.

        """

        states = np.asarray(states, dtype=np.float64)

        if states.ndim != 2 or states.shape[1] != system.n_dim or states.shape[0] < 2:
            e = f'`states` should have shape (n + 1, {system.n_dim}) with n >= 1, got {states.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        images = np.stack([system.step(x) for x in states[:-1]])

        return cls(states, np.linalg.norm(images - states[1:], axis=1))

    def to_dict(self):
        return {'n': self.n_steps, 'defects': _summary(self.defects),
                'jac_defects': _summary(self.jac_defects) if self.jac_defects is not None else None}


def measure_defects(truth, model, x0, n):
    """Rolls a surrogate forward and measures how far each of its steps and Jacobians
    is from the reference system along its own orbit.

    Args:
        truth (System): Reference system.
        model (Surrogate): Learned map.
        x0 (np.array): Initial state.
        n (int): Number of steps.

    Returns:
        A PseudoOrbit with both defect sequences.

    """

    if model.n_dim != truth.n_dim:
        e = f'Model dimension {model.n_dim} differs from system dimension {truth.n_dim}.'

        logger.error(e)

        raise ex.DimensionMismatch(e)

    states = model_orbit(model, x0, n).states
    pseudo = PseudoOrbit.from_states(truth, states)

    jac_defects = np.full(n, np.nan)
    for t in range(n):
        try:
            true_jac = truth.jacobian(states[t])

        except ex.NonSmoothPoint:
            continue

        jac_defects[t] = np.linalg.norm(true_jac - model.input_jacobian(states[t]), ord=2)

    pseudo.jac_defects = jac_defects

    logger.debug('Max defect: %s | Max Jacobian defect: %s.', np.max(pseudo.defects), np.nanmax(jac_defects)
                 if np.any(np.isfinite(jac_defects)) else None)

    return pseudo
