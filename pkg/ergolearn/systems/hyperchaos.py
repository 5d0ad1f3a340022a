"""Four-dimensional hyperchaotic system.
"""

import numpy as np

import ergolearn.utils.logging as l
from ergolearn.core import OdeFlow

logger = l.get_logger(__name__)


class Hyperchaos(OdeFlow):
    """A Hyperchaos class implements the time-δt map of the 4D system

        dx/dt = ax + dz - yz,
        dy/dt = xz - by,
        dz/dt = c(x - z) + xy,
        dw/dt = c(y - w) + xz,

    which is chaotic at its default parameters, with one positive and one near-zero exponent.

    """

    def __init__(self, a=16.0, b=40.0, c=20.0, d=8.0, dt=0.001, substeps=1):
        logger.info('Overriding class: OdeFlow -> Hyperchaos.')

        super(Hyperchaos, self).__init__('hyperchaos', 4,
                                         {'a': float(a), 'b': float(b), 'c': float(c), 'd': float(d)}, dt, substeps)

        logger.debug('Parameters: %s | dt: %s.', dict(self.params), self.dt)
        logger.info('Class overrided.')

    def vector_field(self, x):
        p = self.params

        return np.array([p['a'] * x[0] + p['d'] * x[2] - x[1] * x[2],
                         x[0] * x[2] - p['b'] * x[1],
                         p['c'] * (x[0] - x[2]) + x[0] * x[1],
                         p['c'] * (x[1] - x[3]) + x[0] * x[2]])

    def vector_field_jacobian(self, x):
        p = self.params

        return np.array([[p['a'], -x[2], p['d'] - x[1], 0.0],
                         [x[2], -p['b'], x[0], 0.0],
                         [p['c'] + x[1], x[0], -p['c'], 0.0],
                         [x[2], p['c'], x[0], -p['c']]])

    def default_state(self):
        return np.array([1.0, 1.0, 1.0, 1.0])

    def random_state(self, rng):
        return self.default_state() + 0.1 * rng.standard_normal(4)
