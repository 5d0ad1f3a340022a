"""Lorenz '63 system.
"""

import numpy as np

import ergolearn.utils.logging as l
from ergolearn.core import OdeFlow

logger = l.get_logger(__name__)


class Lorenz63(OdeFlow):
    """A Lorenz63 class implements the time-δt map of dx/dt = [σ(y - x), x(ρ - z) - y, xy - βz].

    """

    def __init__(self, sigma=10.0, rho=28.0, beta=8 / 3, dt=0.01, substeps=1):
        """Initialization method.

        Args:
            sigma (float): Prandtl number σ.
            rho (float): Rayleigh number ρ.
            beta (float): Geometric factor β.
            dt (float): Time step.
            substeps (int): RK4 substeps per time step.

        """

        logger.info('Overriding class: OdeFlow -> Lorenz63.')

        super(Lorenz63, self).__init__('lorenz63', 3, {'sigma': float(sigma), 'rho': float(rho), 'beta': float(beta)},
                                       dt, substeps)

        logger.debug('Parameters: %s | dt: %s.', dict(self.params), self.dt)
        logger.info('Class overrided.')

    def vector_field(self, x):
        p = self.params

        return np.array([p['sigma'] * (x[1] - x[0]),
                         x[0] * (p['rho'] - x[2]) - x[1],
                         x[0] * x[1] - p['beta'] * x[2]])

    def vector_field_jacobian(self, x):
        p = self.params

        return np.array([[-p['sigma'], p['sigma'], 0.0],
                         [p['rho'] - x[2], -1.0, -x[0]],
                         [x[1], x[0], -p['beta']]])

    def default_state(self):
        return np.array([-8.67, 4.98, 25.0])

    def random_state(self, rng):
        return self.default_state() + rng.standard_normal(3)
