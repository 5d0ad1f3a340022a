"""Neural ODE surrogate: a learned vector field advanced by one RK4 step.
"""

import tensorflow as tf

import ergolearn.utils.logging as l
from ergolearn.core import Surrogate
from ergolearn.models.mlp import MLP

logger = l.get_logger(__name__)


class NeuralODE(Surrogate):
    """A NeuralODE class represents F_nn(x) = RK4_dt(v_nn)(x), where v_nn is an MLP vector field.

    """

    def __init__(self, n_dim, dt, units=(512,), activation='gelu', skip=False, seed=0, name='neural_ode'):
        """Initialization method.

        Args:
            n_dim (int): State dimension.
            dt (float): Time step of the surrogate map.
            units (tuple): Width of every hidden layer of the vector field.
            activation (str): Hidden activation of the vector field.
            skip (bool | list): Residual flags of the vector field.
            seed (int): Seed of the vector field initialization.
            name (str): The model's identifier string.

        """

        logger.info('Overriding class: Surrogate -> NeuralODE.')

        super(NeuralODE, self).__init__(n_dim, name=name)

        self.dt = float(dt)
        self.field = MLP(n_dim, units, activation, skip, seed, name='field')

        logger.debug('dt: %s.', self.dt)
        logger.info('Class overrided.')

    def call(self, x, training=False):
        """Method that holds vital information whenever this class is called.

        Args:
            x (tf.tensor): A tensorflow's tensor of shape (batch, d).
            training (bool): Whether architecture is under training or not.

        Returns:
            The state advanced by one RK4 step.

        """

        h = tf.constant(self.dt, dtype=x.dtype)

        k1 = self.field(x, training=training)
        k2 = self.field(x + 0.5 * h * k1, training=training)
        k3 = self.field(x + 0.5 * h * k2, training=training)
        k4 = self.field(x + h * k3, training=training)

        return x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    def vector_field(self, x):
        """Evaluates the learned vector field v_nn(x).

        Args:
            x (np.array): A single state or a batch of states.

        Returns:
            The velocity as a numpy array shaped like the input.

        """

        return self.field.forward(x)

    def get_config(self):
        config = self.field.get_config()
        config.update({'kind': 'neural_ode', 'dt': self.dt})

        return config
