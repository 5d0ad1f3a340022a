"""Orbit dataset class.
"""

import numpy as np
from tensorflow import data

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import Dataset

logger = l.get_logger(__name__)


def orbit_jacobians(system, states):
    """Evaluates dF at every state, storing NaN where the map is not smooth.

    Args:
        system (System): Reference system.
        states (np.array): States of shape (n, d).

    Returns:
        The Jacobians as an array of shape (n, d, d).

    """

    jacobians = np.empty(states.shape + states.shape[-1:])

    for t, x in enumerate(states):
        try:
            jacobians[t] = system.jacobian(x)

        except ex.NonSmoothPoint:
            jacobians[t] = np.nan

    return jacobians


class OrbitDataset(Dataset):
    """An OrbitDataset class is responsible for creating a dataset that predicts
    the next state x_{t+1} (and dF(x_t)) given the state x_t of a single orbit.

    The contiguous states are kept as well, so windows of consecutive true iterates
    can be drawn for unrolled losses.

    """

    def __init__(self, states, jacobians=None, shuffle=True, seed=0):
        """Initialization method.

        Args:
            states (np.array): Orbit states of shape (n + 1, d).
            jacobians (np.array): Jacobians at the first n (or all n + 1) states; NaN marks kinks.
            shuffle (bool): Whether batches should be shuffled or not.
            seed (int): Seed of the shuffling order.

        """

        logger.info('Overriding class: Dataset -> OrbitDataset.')

        states = np.asarray(states, dtype=np.float64)

        if states.ndim != 2 or states.shape[0] < 2:
            e = f'`states` should hold at least two states, got shape {states.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        inputs, targets = states[:-1], states[1:]
        keep = np.ones(len(inputs), dtype=bool)

        if jacobians is not None:
            jacobians = np.asarray(jacobians, dtype=np.float64)[:len(inputs)]

            # Pairs whose Jacobian is undefined are dropped
            keep = np.all(np.isfinite(jacobians.reshape(len(jacobians), -1)), axis=1)
            jacobians = jacobians[keep]

            if not keep.all():
                logger.debug('Dropped %d non-smooth pairs.', int((~keep).sum()))

        super(OrbitDataset, self).__init__(inputs[keep], targets[keep], jacobians, shuffle, seed)

        self.states = states

        logger.debug('Pairs: %d | Jacobians: %s.', len(self), self.has_jacobians)
        logger.info('Class overrided.')

    def windows(self, k):
        """Gathers every window of k + 1 consecutive states.

        Args:
            k (int): Number of unrolled steps.

        Returns:
            A tuple holding the window starts (m, d) and the true iterates (m, k, d).

        """

        n = self.states.shape[0] - k

        if k < 1 or n < 1:
            e = f'Cannot draw windows of {k} steps from {self.states.shape[0]} states.'

            logger.error(e)

            raise ex.ConfigError(e)

        index = np.arange(n)[:, None] + np.arange(1, k + 1)[None, :]

        return self.states[:n], self.states[index]

    def tensors(self, k=None):
        """Gathers the batch dictionary; with k, it holds unrolling windows instead of pairs.

        Args:
            k (int): Number of unrolled steps (None gives the one-step triples).

        Returns:
            A dictionary of arrays.

        """

        if k is None:
            return super(OrbitDataset, self).tensors()

        starts, window = self.windows(k)

        return {'x': starts, 'window': window}

    def build(self, batch_size=None, k=None):
        """Slices the stored triples (or windows) and builds the batches.

        Args:
            batch_size (int): Size of batches (None uses every sample at once).
            k (int): Number of unrolled steps (None gives the one-step triples).

        Returns:
            The built tf.data.Dataset.

        """

        tensors = self.tensors(k)
        batch_size = len(tensors['x']) if batch_size is None else int(batch_size)

        self._build(data.Dataset.from_tensor_slices(tensors), batch_size)

        return self.batches


def make_dataset(system, orbit, with_jacobians=True, shuffle=True, seed=0):
    """Builds the training triples (x_t, x_{t+1}, dF(x_t)) of an orbit.

    Args:
        system (System): Reference system.
        orbit (Orbit): Orbit of the system.
        with_jacobians (bool): Whether dF(x_t) should be stored.
        shuffle (bool): Whether batches should be shuffled or not.
        seed (int): Seed of the shuffling order.

    Returns:
        An OrbitDataset.

    """

    jacobians = orbit_jacobians(system, orbit.states[:-1]) if with_jacobians else None

    return OrbitDataset(orbit.states, jacobians, shuffle, seed)


def split_orbit(orbit, n_train, n_test):
    """Splits an orbit into contiguous train and test orbits sharing their boundary state.

    Args:
        orbit (Orbit): Orbit with at least n_train + n_test transitions.
        n_train (int): Number of training pairs.
        n_test (int): Number of test pairs.

    Returns:
        The train and test orbits.

    """

    if n_train + n_test > orbit.n_steps:
        e = f'Orbit holds {orbit.n_steps} transitions, fewer than {n_train} + {n_test}.'

        logger.error(e)

        raise ex.ConfigError(e)

    return orbit.slice(0, n_train + 1), orbit.slice(n_train, n_train + n_test + 1)
