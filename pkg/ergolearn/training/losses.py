"""Losses used to regress maps and their Jacobians.
"""

import math

import numpy as np
import tensorflow as tf

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)

LOSS_KINDS = ('mse', 'jac', 'unrolled')


def _same_shape(a, b, names):
    if a.shape != b.shape:
        e = f'`{names[0]}` and `{names[1]}` should share a shape, got {a.shape} and {b.shape}.'

        logger.error(e)

        raise ex.ShapeMismatch(e)


def loss_mse(pred, target):
    """Squared Euclidean distance ||pred - target||^2.

    Args:
        pred (np.array): Predicted state.
        target (np.array): True state.

    Returns:
        The loss value.

    """

    pred, target = np.asarray(pred, dtype=np.float64), np.asarray(target, dtype=np.float64)
    _same_shape(pred, target, ('pred', 'target'))

    return float(np.sum((pred - target) ** 2))


def loss_jac(pred, target, pred_jac, target_jac, lam):
    """Jacobian-matching loss ||pred - target||^2 + lam ||pred_jac - target_jac||_F^2.

    Args:
        pred (np.array): Predicted state.
        target (np.array): True state.
        pred_jac (np.array): Predicted Jacobian.
        target_jac (np.array): True Jacobian.
        lam (float): Weight of the Jacobian term.

    Returns:
        The loss value.

    """

    pred_jac, target_jac = np.asarray(pred_jac, dtype=np.float64), np.asarray(target_jac, dtype=np.float64)
    _same_shape(pred_jac, target_jac, ('pred_jac', 'target_jac'))

    if lam < 0:
        e = f'`lam` should be >= 0, got {lam}.'

        logger.error(e)

        raise ex.ConfigError(e)

    return loss_mse(pred, target) + lam * float(np.sum((pred_jac - target_jac) ** 2))


def loss_unrolled(model, system, x0, k):
    """Mean squared error of k composed surrogate steps against k true steps from x0.

    Args:
        model (Surrogate): Learned map.
        system (System): Reference system.
        x0 (np.array): Initial state.
        k (int): Number of unrolled steps.

    Returns:
        The loss value (1/k) sum_t ||F_nn^t(x0) - F^t(x0)||^2.

    """

    if k < 1:
        e = f'`k` should be >= 1, got {k}.'

        logger.error(e)

        raise ex.ConfigError(e)

    x_nn = x_true = np.asarray(x0, dtype=np.float64)

    total = 0.0
    for _ in range(k):
        x_nn = model.forward(x_nn)
        x_true = system.step(x_true)

        total += loss_mse(x_nn, x_true)

    value = total / k

    if not math.isfinite(value):
        e = f'Unrolled loss is not finite after {k} steps from {x0}.'

        logger.error(e)

        raise ex.NonFiniteLoss(e)

    return value


class LossSpec:
    """A LossSpec class describes one of the training losses and evaluates it over batches
    of tensors, so it can be differentiated with respect to the surrogate's weights.

    """

    def __init__(self, kind='mse', lam=0.0, k=1, jac_columns=None):
        """Initialization method.

        Args:
            kind (str): `mse`, `jac` (Jacobian matching) or `unrolled`.
            lam (float): Weight of the Jacobian term (`jac` only).
            k (int): Number of unrolled steps (`unrolled` only).
            jac_columns (int): If given, the Frobenius term is estimated on this many random
                tangent directions per batch, scaled by d / jac_columns.

        """

        if kind not in LOSS_KINDS:
            e = f'`kind` should be one of {LOSS_KINDS}, got {kind}.'

            logger.error(e)

            raise ex.ConfigError(e)

        if not (math.isfinite(lam) and lam >= 0) or int(k) < 1:
            e = f'`lam` should be finite and >= 0 and `k` >= 1, got {lam} and {k}.'

            logger.error(e)

            raise ex.ConfigError(e)

        self.kind = kind
        self.lam = float(lam)
        self.k = int(k)
        self.jac_columns = jac_columns

    @property
    def requires_jacobians(self):
        """bool: Whether the loss needs Jacobian targets.

        """

        return self.kind == 'jac'

    @property
    def window(self):
        """int: Number of unrolled steps carried by a batch (None for one-step triples).

        """

        return self.k if self.kind == 'unrolled' else None

    def per_sample(self, model, batch, subsample=False):
        """Evaluates the loss of every sample of a batch.

        Args:
            model (Surrogate): Learned map.
            batch (dict): Tensors `x` and either `y` (plus `jac`) or `window`.
            subsample (bool): Whether Jacobian columns may be subsampled.

        Returns:
            A tensor of shape (batch,).

        """

        x = batch['x']

        if self.kind == 'unrolled':
            window = batch['window']

            total = tf.zeros_like(x[:, 0])
            for t in range(self.k):
                x = model(x, training=True)
                total += tf.reduce_sum((x - window[:, t]) ** 2, axis=-1)

            return total / self.k

        value = tf.reduce_sum((model(x, training=True) - batch['y']) ** 2, axis=-1)

        if self.kind == 'jac' and self.lam > 0:
            n_dim = model.n_dim
            target = batch['jac']

            if subsample and self.jac_columns and self.jac_columns < n_dim:
                columns = tf.random.shuffle(tf.range(n_dim))[:self.jac_columns]
                pred = model.jacobian_columns(x, [columns[i] for i in range(self.jac_columns)])
                target = tf.gather(target, columns, axis=-1)
                scale = n_dim / self.jac_columns
            else:
                pred = model.jacobian_columns(x)
                scale = 1.0

            value += self.lam * scale * tf.reduce_sum((pred - target) ** 2, axis=[-2, -1])

        return value

    def __call__(self, model, batch, subsample=False):
        return tf.reduce_mean(self.per_sample(model, batch, subsample))

    def to_dict(self):
        """Serializes the loss specification.

        Returns:
            A dictionary.

        """

        return {'kind': self.kind, 'lam': self.lam, 'k': self.k, 'jac_columns': self.jac_columns}
