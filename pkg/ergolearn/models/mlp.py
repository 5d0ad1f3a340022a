"""Multi-Layer Perceptron with optional residual connections.
"""

import numpy as np
import tensorflow as tf
from tensorflow.keras.initializers import HeUniform
from tensorflow.keras.layers import Dense

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import Surrogate

logger = l.get_logger(__name__)

ACTIVATIONS = {
    'gelu': lambda x: 0.5 * x * (1.0 + tf.math.erf(x / np.sqrt(2.0))),
    'relu': tf.nn.relu
}


class MLP(Surrogate):
    """An MLP class implements a stack of dense layers mapping R^d to R^d.

    Hidden layers are followed by the activation, while the output layer is linear.
    A layer flagged as residual adds its input to its output, which requires equal
    input and output widths.

    """

    def __init__(self, n_dim, units=(512,), activation='gelu', skip=False, seed=0, name='mlp'):
        """Initialization method.

        Args:
            n_dim (int): Input and output dimension.
            units (tuple): Width of every hidden layer.
            activation (str): Hidden activation, `gelu` (exact) or `relu`.
            skip (bool | list): Residual flags; a boolean applies to every layer whose widths match.
            seed (int): Seed of the He-uniform kernel initialization.
            name (str): The model's identifier string.

        """

        logger.info('Overriding class: Surrogate -> MLP.')

        super(MLP, self).__init__(n_dim, name=name)

        if activation not in ACTIVATIONS:
            e = f'`activation` should be one of {sorted(ACTIVATIONS)}, got {activation}.'

            logger.error(e)

            raise ex.ConfigError(e)

        widths = [int(n_dim)] + [int(u) for u in units] + [int(n_dim)]
        pairs = list(zip(widths[:-1], widths[1:]))

        if isinstance(skip, bool):
            flags = [skip and a == b for a, b in pairs]
        else:
            flags = [bool(f) for f in skip]

            if len(flags) != len(pairs) or any(f and a != b for f, (a, b) in zip(flags, pairs)):
                e = f'Residual flags {flags} do not fit layer widths {widths}.'

                logger.error(e)

                raise ex.ShapeMismatch(e)

        self.units = tuple(widths[1:-1])
        self.activation = activation
        self.skip = tuple(flags)
        self.seed = int(seed)

        # One dense layer per width transition, the last one being the output
        self.blocks = [Dense(width, kernel_initializer=HeUniform(seed=self.seed + i), bias_initializer='zeros',
                             dtype='float64', name=f'dense_{i}')
                       for i, width in enumerate(widths[1:])]

        # Builds every variable right away
        self(tf.zeros((1, self.n_dim), dtype=tf.float64))

        logger.debug('Units: %s | Activation: %s | Skip: %s | Seed: %d.',
                     self.units, self.activation, self.skip, self.seed)
        logger.info('Class overrided.')

    def call(self, x, training=False):
        """Method that holds vital information whenever this class is called.

        Args:
            x (tf.tensor): A tensorflow's tensor of shape (batch, d).
            training (bool): Whether architecture is under training or not.

        Returns:
            The output tensor of shape (batch, d).

        """

        act = ACTIVATIONS[self.activation]
        last = len(self.blocks) - 1

        for i, layer in enumerate(self.blocks):
            y = layer(x)

            if i < last:
                y = act(y)

            x = x + y if self.skip[i] else y

        return x

    def get_config(self):
        return {'kind': 'mlp', 'n_dim': self.n_dim, 'units': list(self.units), 'activation': self.activation,
                'skip': list(self.skip), 'seed': self.seed}
