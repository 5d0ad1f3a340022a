"""Surrogate wrapping a reference system.
"""

import numpy as np
import tensorflow as tf

import ergolearn.utils.logging as l
from ergolearn.core import Surrogate

logger = l.get_logger(__name__)


class ExactModel(Surrogate):
    """An ExactModel class exposes F(x) + b through the surrogate interface, so the
    reference dynamics can be audited like any learned model.

    """

    def __init__(self, system, bias=None, name='exact'):
        """Initialization method.

        Args:
            system (System): Reference system.
            bias (np.array): Constant additive bias b (defaults to zero).
            name (str): The model's identifier string.

        """

        logger.info('Overriding class: Surrogate -> ExactModel.')

        super(ExactModel, self).__init__(system.n_dim, name=name)

        self.system = system
        self.offset = np.zeros(system.n_dim) if bias is None else np.asarray(bias, dtype=np.float64)

        logger.debug('System: %s | Bias: %s.', system.name, self.offset)
        logger.info('Class overrided.')

    def _steps(self, x):
        return np.stack([self.system.step(row) for row in x]) + self.offset

    def _jacobians(self, x):
        return np.stack([self.system.jacobian(row) for row in x])

    def call(self, x, training=False):
        y = tf.numpy_function(self._steps, [x], tf.float64)
        y.set_shape(x.shape)

        return y

    def jacobian_columns(self, x, columns=None):
        jac = tf.numpy_function(self._jacobians, [x], tf.float64)
        jac.set_shape(x.shape + x.shape[-1:])

        if columns is None:
            return jac

        return tf.gather(jac, list(columns), axis=-1)

    def forward(self, x):
        x = np.asarray(x, dtype=np.float64)

        if x.ndim == 1:
            return self.system.step(x) + self.offset

        return self._steps(x)

    def input_jacobian(self, x):
        x = np.asarray(x, dtype=np.float64)

        if x.ndim == 1:
            return self.system.jacobian(x)

        return self._jacobians(x)

    def tangent(self, x):
        y, jac = self.system.tangent(x)

        return y + self.offset, jac

    def get_config(self):
        return {'kind': 'exact', 'n_dim': self.n_dim, 'system': self.system.to_dict(), 'bias': self.offset.tolist()}
