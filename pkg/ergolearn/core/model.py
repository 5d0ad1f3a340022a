"""Model-related classes.
"""

import numpy as np
import tensorflow as tf
from tensorflow.keras import Model

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)


class Surrogate(Model):
    """A Surrogate class is responsible for easily-implementing learned maps F_nn: R^d -> R^d,
    with value, input-Jacobian and parameter-gradient evaluations.

    """

    def __init__(self, n_dim, name=''):
        """Initialization method.

        Note that basic variables shared by all childs should be declared here, e.g., layers.

        Args:
            n_dim (int): State dimension.
            name (str): The model's identifier string.

        """

        super(Surrogate, self).__init__(name=name, dtype='float64')

        self.n_dim = int(n_dim)

    @property
    def n_dim(self):
        """int: State dimension.

        """

        return self._n_dim

    @n_dim.setter
    def n_dim(self, n_dim):
        self._n_dim = n_dim

    def call(self, x, training=False):
        """Method that holds vital information whenever this class is called.

        Note that you will need to implement this method directly on its child. Essentially,
        each surrogate has its own forward pass implementation.

        Args:
            x (tf.tensor): A tensorflow's tensor of shape (batch, d).
            training (bool): Whether architecture is under training or not.

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def _check_input(self, x):
        """Casts an input to a float64 (batch, d) tensor.

        Args:
            x (np.array | tf.tensor): A single state or a batch of states.

        Returns:
            The batched tensor and whether the input was a single state.

        """

        x = tf.convert_to_tensor(x, dtype=tf.float64)
        single = x.shape.rank == 1

        if single:
            x = x[tf.newaxis]

        if x.shape.rank != 2 or x.shape[-1] != self.n_dim:
            e = f'Input should have trailing dimension {self.n_dim}, got shape {x.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        return x, single

    def jacobian_columns(self, x, columns=None):
        """Computes columns of the input-Jacobian by forward-mode accumulation,
        one pass per input direction.

        Gradients of the returned tensor with respect to the weights are available
        when this is called under a tf.GradientTape.

        Args:
            x (tf.tensor): A batch of states of shape (batch, d).
            columns (list): Input directions to evaluate (defaults to all d of them).

        Returns:
            A tensor of shape (batch, d, len(columns)).

        """

        columns = range(self.n_dim) if columns is None else columns
        batch_size = tf.shape(x)[0]

        outputs = []
        for j in columns:
            tangent = tf.one_hot(tf.fill([batch_size], j), self.n_dim, dtype=x.dtype)

            with tf.autodiff.ForwardAccumulator(x, tangent) as acc:
                y = self(x, training=False)

            outputs.append(acc.jvp(y))

        return tf.stack(outputs, axis=-1)

    def forward(self, x):
        """Evaluates the surrogate.

        Args:
            x (np.array): A single state or a batch of states.

        Returns:
            F_nn(x) as a numpy array shaped like the input.

        """

        x, single = self._check_input(x)
        y = self._predict_graph(x).numpy()

        return y[0] if single else y

    def input_jacobian(self, x):
        """Evaluates the input-Jacobian dF_nn(x).

        Args:
            x (np.array): A single state or a batch of states.

        Returns:
            A (d, d) matrix, or a (batch, d, d) array for batched inputs.

        """

        x, single = self._check_input(x)
        jac = self.jacobian_columns(x).numpy()

        return jac[0] if single else jac

    def tangent(self, x):
        """Evaluates the surrogate and its Jacobian at once.

        Args:
            x (np.array): A state.

        Returns:
            A tuple holding F_nn(x) and dF_nn(x).

        """

        x, _ = self._check_input(x)
        y, jac = self._tangent_graph(x)

        return y.numpy()[0], jac.numpy()[0]

    @tf.function(reduce_retracing=True)
    def _predict_graph(self, x):
        return self(x, training=False)

    @tf.function(reduce_retracing=True)
    def _tangent_graph(self, x):
        return self(x, training=False), self.jacobian_columns(x)

    def loss_gradient(self, batch, loss):
        """Evaluates a loss over a batch and its exact gradient with respect to every weight.

        Args:
            batch (dict): Batch holding `x`, `y` and optionally `jac` or `window` arrays.
            loss (LossSpec): Loss to be differentiated.

        Returns:
            A tuple holding the loss value and the gradients, congruent with `trainable_variables`.

        """

        batch = {k: tf.convert_to_tensor(v, dtype=tf.float64) for k, v in batch.items()}

        with tf.GradientTape() as tape:
            value = loss(self, batch)

        gradients = tape.gradient(value, self.trainable_variables)
        value = float(value.numpy())

        if not np.isfinite(value):
            e = f'Loss is not finite: {value}.'

            logger.error(e)

            raise ex.NonFiniteLoss(e)

        return value, gradients
