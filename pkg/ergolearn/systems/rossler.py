"""Rössler system.
"""

import numpy as np

import ergolearn.utils.logging as l
from ergolearn.core import OdeFlow

logger = l.get_logger(__name__)


class Rossler(OdeFlow):
    """A Rossler class implements the time-δt map of dx/dt = [-y - z, x + ay, b + z(x - c)].

    """

    def __init__(self, a=0.2, b=0.2, c=5.7, dt=0.01, substeps=1):
        """Initialization method.

        Args:
            a (float): Parameter a.
            b (float): Parameter b.
            c (float): Parameter c.
            dt (float): Time step.
            substeps (int): RK4 substeps per time step.

        """

        logger.info('Overriding class: OdeFlow -> Rossler.')

        super(Rossler, self).__init__('rossler', 3, {'a': float(a), 'b': float(b), 'c': float(c)}, dt, substeps)

        logger.debug('Parameters: %s | dt: %s.', dict(self.params), self.dt)
        logger.info('Class overrided.')

    def vector_field(self, x):
        p = self.params

        return np.array([-x[1] - x[2],
                         x[0] + p['a'] * x[1],
                         p['b'] + x[2] * (x[0] - p['c'])])

    def vector_field_jacobian(self, x):
        p = self.params

        return np.array([[0.0, -1.0, -1.0],
                         [1.0, p['a'], 0.0],
                         [x[2], 0.0, x[0] - p['c']]])

    def default_state(self):
        return np.array([1.0, -6.0, 0.02])

    def random_state(self, rng):
        return self.default_state() + rng.standard_normal(3)
