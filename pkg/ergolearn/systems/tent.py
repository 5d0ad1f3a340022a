"""Tent-map family on the interval [0, 2].
"""

import math

import numpy as np

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import DiscreteMap

logger = l.get_logger(__name__)


class TentMap(DiscreteMap):
    """A TentMap class holds the shared machinery of one-parameter tent maps,
    which are piecewise smooth maps of [0, 2] onto itself.

    """

    def __init__(self, name, s, params=None):
        """Initialization method.

        Args:
            name (str): Identifier of the map.
            s (float): Shape parameter in (0, 1).
            params (dict): Remaining named parameters.

        """

        if not 0 < s < 1:
            e = f'`s` should be in (0, 1), got {s}.'

            logger.error(e)

            raise ex.ConfigError(e)

        super(TentMap, self).__init__(name, 1, dict(params or {}, s=float(s)))

    @property
    def s(self):
        """float: Shape parameter.

        """

        return self.params['s']

    def _value(self, x):
        raise NotImplementedError

    def _slope(self, x):
        raise NotImplementedError

    def _breakpoints(self, x):
        """Gets the distance from x to the closest non-smooth point.

        Args:
            x (float): A point of [0, 2].

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def _map(self, x):
        return np.array([self._value(float(x[0]))])

    def _map_jacobian(self, x):
        x = float(x[0])

        if self._breakpoints(x) < c.KINK_TOLERANCE:
            e = f'{self.name}: x = {x} lies on a kink.'

            logger.debug(e)

            raise ex.NonSmoothPoint(e)

        return np.array([[self._slope(x)]])

    def default_state(self):
        return np.array([0.5 * (math.sqrt(5) - 1)])

    def random_state(self, rng):
        return rng.uniform(0.0, 2.0, size=1)


class TiltedTentMap(TentMap):
    """Tent map whose peak is moved to 1 + s, with branches of slope 2/(1+s) and -2/(1-s).

    """

    def __init__(self, s=0.2):
        logger.info('Overriding class: DiscreteMap -> TiltedTentMap.')

        super(TiltedTentMap, self).__init__('tent_tilted', s)

        logger.debug('s: %s.', self.s)
        logger.info('Class overrided.')

    def _value(self, x):
        s = self.s

        if x < 1 + s:
            return 2 * x / (1 + s)

        return 2 * (2 - x) / (1 - s)

    def _slope(self, x):
        s = self.s

        if x < 1 + s:
            return 2 / (1 + s)

        return -2 / (1 - s)

    def _breakpoints(self, x):
        return abs(x - (1 + self.s))


class PinchedTentMap(TentMap):
    """Symmetric tent map whose branches are bent by the parameter s.

    On [0, 1] the map is g(x) = 4x / (1 + s + sqrt((1 + s)^2 - 4sx)), which
    sends [0, 1] onto [0, 2], and F(x) = g(2 - x) on [1, 2].

    """

    def __init__(self, s=0.2):
        logger.info('Overriding class: DiscreteMap -> PinchedTentMap.')

        super(PinchedTentMap, self).__init__('tent_pinched', s)

        logger.debug('s: %s.', self.s)
        logger.info('Class overrided.')

    def _branch(self, y):
        """Evaluates the left branch g and its derivative.

        Args:
            y (float): A point of [0, 1].

        Returns:
            A tuple holding g(y) and g'(y).

        """

        s = self.s
        a = 1 + s
        r = math.sqrt(a ** 2 - 4 * s * y)

        value = 4 * y / (a + r)
        slope = (4 * (a + r) + 8 * s * y / r) / (a + r) ** 2

        return value, slope

    def _value(self, x):
        if x < 1:
            return self._branch(x)[0]

        return self._branch(2 - x)[0]

    def _slope(self, x):
        if x < 1:
            return self._branch(x)[1]

        return -self._branch(2 - x)[1]

    def _breakpoints(self, x):
        return abs(x - 1)


class PluckedTentMap(TentMap):
    """Tent map with 2^n small plucks, built from the tilted profile
    f(y) = 2y / (1 - s) for y < (1 - s) / 2 and 1 + (2y - 1 + s) / (1 + s) otherwise.

    With o(u) = f(2u) / 2 for u < 1/2 and o(u) = 2 - f(2 - 2u) / 2 otherwise, the map reads
    F(x) = min(L(x), L(2 - x)) where L(x) = o(frac(2^n x)) / 2^n + 2 floor(2^n x) / 2^n.

    """

    def __init__(self, s=0.2, n=3):
        logger.info('Overriding class: DiscreteMap -> PluckedTentMap.')

        if int(n) < 1:
            e = f'`n` should be >= 1, got {n}.'

            logger.error(e)

            raise ex.ConfigError(e)

        super(PluckedTentMap, self).__init__('tent_plucked', s, {'n': int(n)})

        self._scale = 2 ** int(n)

        logger.debug('s: %s | n: %d.', self.s, int(n))
        logger.info('Class overrided.')

    @property
    def crossover(self):
        """float: Non-smooth point of the profile f.

        """

        return (1 - self.s) / 2

    def _profile(self, y):
        s = self.s

        if y < self.crossover:
            return 2 * y / (1 - s), 2 / (1 - s)

        return 1 + (2 * y - 1 + s) / (1 + s), 2 / (1 + s)

    def _pluck(self, u):
        if u < 0.5:
            value, slope = self._profile(2 * u)

            return value / 2, slope

        value, slope = self._profile(2 - 2 * u)

        return 2 - value / 2, slope

    def _lift(self, x):
        """Evaluates L and its derivative.

        Args:
            x (float): A point of [0, 2].

        Returns:
            A tuple holding L(x) and L'(x).

        """

        scaled = self._scale * x
        k = math.floor(scaled)
        value, slope = self._pluck(scaled - k)

        return (value + 2 * k) / self._scale, slope

    def _value(self, x):
        return min(self._lift(x)[0], self._lift(2 - x)[0])

    def _slope(self, x):
        left, left_slope = self._lift(x)
        right, right_slope = self._lift(2 - x)

        if left <= right:
            return left_slope

        return -right_slope

    def _breakpoints(self, x):
        u = math.fmod(self._scale * x, 1.0)
        half = self.crossover / 2

        distance = min(abs(u - half), abs(u - (1 - half))) / self._scale

        return min(distance, abs(x - 1))
