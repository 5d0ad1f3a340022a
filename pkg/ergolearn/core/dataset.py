"""Dataset-related class.
"""

import numpy as np
from tensorflow import data

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)


class Dataset:
    """A Dataset class is responsible for persisting training triples (x, F(x), dF(x))
    and feeding them as batches to the surrogates.

    """

    def __init__(self, inputs, targets, jacobians=None, shuffle=True, seed=0):
        """Initialization method.

        Args:
            inputs (np.array): States x of shape (m, d).
            targets (np.array): Images F(x) of shape (m, d).
            jacobians (np.array): Optional Jacobians dF(x) of shape (m, d, d).
            shuffle (bool): Whether batches should be shuffled or not.
            seed (int): Seed of the shuffling order.

        """

        inputs = np.asarray(inputs, dtype=np.float64)
        targets = np.asarray(targets, dtype=np.float64)

        if inputs.ndim != 2 or inputs.shape != targets.shape:
            e = f'`inputs` and `targets` should share a (m, d) shape, got {inputs.shape} and {targets.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        if jacobians is not None:
            jacobians = np.asarray(jacobians, dtype=np.float64)

            if jacobians.shape != inputs.shape + inputs.shape[-1:]:
                e = f'`jacobians` should have shape {inputs.shape + inputs.shape[-1:]}, got {jacobians.shape}.'

                logger.error(e)

                raise ex.ShapeMismatch(e)

        self.inputs = inputs
        self.targets = targets
        self.jacobians = jacobians

        # Creating a property to whether data should be shuffled or not
        self.shuffle = shuffle
        self.seed = seed

        self._batches = None

    def __len__(self):
        return self.inputs.shape[0]

    @property
    def n_dim(self):
        """int: State dimension.

        """

        return self.inputs.shape[1]

    @property
    def has_jacobians(self):
        """bool: Whether Jacobian targets are stored.

        """

        return self.jacobians is not None

    @property
    def shuffle(self):
        """bool: Whether data should be shuffled or not.

        """

        return self._shuffle

    @shuffle.setter
    def shuffle(self, shuffle):
        self._shuffle = shuffle

    @property
    def batches(self):
        """tf.data.Dataset: An instance of tensorflow's dataset batches.

        """

        return self._batches

    @batches.setter
    def batches(self, batches):
        self._batches = batches

    def require_jacobians(self):
        """Checks that Jacobian targets are available.

        """

        if not self.has_jacobians:
            e = 'Dataset has no Jacobian targets, but the loss requires them.'

            logger.error(e)

            raise ex.MissingJacobians(e)

    def tensors(self):
        """Gathers the stored arrays in a batch dictionary.

        Returns:
            A dictionary with `x`, `y` and (if available) `jac` entries.

        """

        batch = {'x': self.inputs, 'y': self.targets}

        if self.has_jacobians:
            batch['jac'] = self.jacobians

        return batch

    def _build(self, sliced_data, batch_size):
        """Builds the batches based on the sliced triples.

        Args:
            sliced_data (tf.data.Dataset): Slices of tensor-based data.
            batch_size (int): Size of batches.

        """

        if self.shuffle:
            # Reshuffles once per epoch with a fixed seed, so runs are reproducible
            sliced_data = sliced_data.shuffle(c.BUFFER_SIZE, seed=self.seed, reshuffle_each_iteration=True)

        # Transforms the triples into batches
        self.batches = (
            sliced_data
            .batch(batch_size)
            .prefetch(data.AUTOTUNE))

    def build(self, batch_size=None):
        """Slices the stored triples and builds the batches.

        Args:
            batch_size (int): Size of batches (None uses the whole dataset at once).

        Returns:
            The built tf.data.Dataset.

        """

        batch_size = len(self) if batch_size is None else int(batch_size)

        self._build(data.Dataset.from_tensor_slices(self.tensors()), batch_size)

        logger.debug('Batch size: %d | Shuffle: %s.', batch_size, self.shuffle)

        return self.batches
