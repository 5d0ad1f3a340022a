"""Linear systems with constant Jacobians.
"""

import numpy as np
from scipy import linalg

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import DiscreteMap, OdeFlow

logger = l.get_logger(__name__)


def _as_square(A):
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))

    if A.shape[0] != A.shape[1]:
        e = f'`A` should be square, got shape {A.shape}.'

        logger.error(e)

        raise ex.ShapeMismatch(e)

    return A


class LinearMap(DiscreteMap):
    """A LinearMap class implements F(x) = Ax.

    """

    def __init__(self, A):
        """Initialization method.

        Args:
            A (np.array): A square matrix.

        """

        A = _as_square(A)

        super(LinearMap, self).__init__('linear_map', A.shape[0], {'A': A.tolist()})

        self.A = A

    def _map(self, x):
        return self.A @ x

    def _map_jacobian(self, x):
        return self.A.copy()

    def log_det(self):
        """Gets log|det A|, which equals the sum of the Lyapunov exponents.

        Returns:
            The log-determinant.

        """

        return np.linalg.slogdet(self.A)[1]


class LinearFlow(OdeFlow):
    """A LinearFlow class implements the RK4 time-δt map of dx/dt = Ax.

    """

    def __init__(self, A, dt=0.01, substeps=1):
        A = _as_square(A)

        super(LinearFlow, self).__init__('linear_flow', A.shape[0], {'A': A.tolist()}, dt, substeps)

        self.A = A

    def vector_field(self, x):
        return self.A @ x

    def vector_field_jacobian(self, x):
        return self.A

    def exact_step(self):
        """Gets the matrix exponential e^{A dt} of the underlying flow.

        Returns:
            The exact time-δt propagator.

        """

        return linalg.expm(self.A * self.dt)
