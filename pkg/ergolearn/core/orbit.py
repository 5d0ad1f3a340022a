"""Orbit-related classes.
"""

import numpy as np

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)


class Orbit:
    """An Orbit class holds a time-indexed sequence of states x_0, ..., x_n.

    """

    def __init__(self, states, system=None, x0=None):
        """Initialization method.

        Args:
            states (np.array): Array of shape (n + 1, d).
            system (System): System that produced the states (if any).
            x0 (np.array): Initial state before spin-up.

        """

        states = np.asarray(states, dtype=np.float64)

        if states.ndim != 2 or states.shape[0] < 1:
            e = f'`states` should be a non-empty 2D array, got shape {states.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        self.states = states
        self.system = system
        self.x0 = states[0].copy() if x0 is None else np.asarray(x0, dtype=np.float64)

    def __len__(self):
        return self.states.shape[0]

    def __getitem__(self, index):
        return self.states[index]

    @property
    def n_steps(self):
        """int: Number of transitions stored in the orbit.

        """

        return self.states.shape[0] - 1

    @property
    def n_dim(self):
        """int: State dimension.

        """

        return self.states.shape[1]

    def slice(self, start, stop):
        """Gets a contiguous sub-orbit.

        Args:
            start (int): First state index.
            stop (int): One past the last state index.

        Returns:
            A new Orbit holding states[start:stop].

        """

        return Orbit(self.states[start:stop], system=self.system)


class TangentFrame:
    """A TangentFrame holds k tangent vectors pushed forward by Jacobians and
    re-orthonormalized by QR, accumulating the log stretch of each direction.

    """

    def __init__(self, n_dim, k=None):
        """Initialization method.

        Args:
            n_dim (int): State dimension d.
            k (int): Number of tangent directions (defaults to d).

        """

        k = n_dim if k is None else k

        if not 1 <= k <= n_dim:
            e = f'`k` should be in [1, {n_dim}], got {k}.'

            logger.error(e)

            raise ex.ConfigError(e)

        self.basis = np.eye(n_dim, k)
        self.log_norms = np.zeros(k)

    def push(self, jacobian):
        """Maps every direction through a Jacobian.

        Args:
            jacobian (np.array): A (d, d) matrix.

        """

        self.basis = jacobian @ self.basis

    def reorthonormalize(self):
        """Applies a thin QR decomposition, keeping Q as the new basis and adding
        log|diag(R)| to the accumulated stretches.

        """

        q, r = np.linalg.qr(self.basis)
        diag = np.diag(r)

        if not np.all(np.isfinite(diag)) or np.any(np.abs(diag) < c.FRAME_FLOOR):
            e = f'Tangent frame collapsed, |diag(R)| = {np.abs(diag)}.'

            logger.error(e)

            raise ex.DegenerateFrame(e)

        # Positive diagonal convention keeps Q unique
        self.basis = q * np.sign(diag)
        self.log_norms += np.log(np.abs(diag))
