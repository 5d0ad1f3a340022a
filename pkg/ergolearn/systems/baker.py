"""Perturbed Baker's map on the torus [0, 2π)².
"""

import math

import numpy as np

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import DiscreteMap

logger = l.get_logger(__name__)

TWO_PI = 2 * math.pi


class BakerMap(DiscreteMap):
    """A BakerMap class implements the smoothly perturbed Baker's map

        x' = 2x - 2π floor(y / π)  mod 2π,
        y' = (y + s sin(x) sin(2y) + 2π floor(x / π)) / 2  mod 2π.

    """

    def __init__(self, s=0.1):
        """Initialization method.

        Args:
            s (float): Perturbation strength, |s| < 0.5 keeps the map invertible.

        """

        logger.info('Overriding class: DiscreteMap -> BakerMap.')

        if abs(s) >= 0.5:
            e = f'`s` should satisfy |s| < 0.5, got {s}.'

            logger.error(e)

            raise ex.ConfigError(e)

        super(BakerMap, self).__init__('baker', 2, {'s': float(s)})

        logger.debug('s: %s.', s)
        logger.info('Class overrided.')

    @property
    def s(self):
        """float: Perturbation strength.

        """

        return self.params['s']

    def _map(self, x):
        x0, y0 = float(x[0]), float(x[1])

        x1 = (2 * x0 - TWO_PI * math.floor(y0 / math.pi)) % TWO_PI
        y1 = (0.5 * (y0 + self.s * math.sin(x0) * math.sin(2 * y0) + TWO_PI * math.floor(x0 / math.pi))) % TWO_PI

        return np.array([x1, y1])

    def _map_jacobian(self, x):
        x0, y0 = float(x[0]), float(x[1])

        # Discontinuity lines of the floor terms
        if min(abs(x0), abs(x0 - math.pi), abs(x0 - TWO_PI)) < c.KINK_TOLERANCE:
            e = f'{self.name}: x = {x} lies on a discontinuity line.'

            logger.debug(e)

            raise ex.NonSmoothPoint(e)

        s = self.s

        return np.array([[2.0, 0.0],
                         [0.5 * s * math.cos(x0) * math.sin(2 * y0),
                          0.5 + s * math.sin(x0) * math.cos(2 * y0)]])

    def default_state(self):
        return np.array([1.0, 2.0])

    def random_state(self, rng):
        return rng.uniform(0.0, TWO_PI, size=2)
