"""Risk and relative-error metrics.
"""

import numpy as np
import tensorflow as tf

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)

# Samples evaluated at once when computing risks
CHUNK_SIZE = 4096


def empirical_risk(model, dataset, loss):
    """Averages a loss over every sample of a dataset.

    Args:
        model (Surrogate): Learned map.
        dataset (OrbitDataset): Samples.
        loss (LossSpec): Loss to be averaged.

    Returns:
        The empirical risk (1/m) sum_i l(x_i).

    """

    if loss.requires_jacobians:
        dataset.require_jacobians()

    tensors = dataset.tensors(loss.window) if loss.window else dataset.tensors()
    m = len(tensors['x'])

    if m == 0:
        e = 'Cannot evaluate a risk over an empty dataset.'

        logger.error(e)

        raise ex.ConfigError(e)

    values = []
    for start in range(0, m, CHUNK_SIZE):
        chunk = {k: tf.convert_to_tensor(v[start:start + CHUNK_SIZE], dtype=tf.float64) for k, v in tensors.items()}
        values.append(loss.per_sample(model, chunk).numpy())

    return float(np.mean(np.concatenate(values)))


def relative_error(model, system, orbit, mode='displacement', with_skipped=False):
    """Mean relative error ||v_F(x) - v_h(x)|| / ||v_F(x)|| over the states of an orbit.

    In `displacement` mode, v is the one-step displacement (F(x) - x) / dt for flows
    and F(x) itself for maps. In `vector_field` mode, the true vector field is compared
    with the vector field learned by a NeuralODE.

    Args:
        model (Surrogate): Learned map.
        system (System): Reference system.
        orbit (Orbit): Test orbit, with x_{t+1} = F(x_t).
        mode (str): `displacement` or `vector_field`.
        with_skipped (bool): Whether the number of skipped near-zero velocity points
            should be returned as well.

    Returns:
        The mean relative error over the points that were not skipped and, if
        `with_skipped`, the number of skipped points.

    """

    x = orbit.states[:-1]

    if mode == 'vector_field':
        if not hasattr(system, 'vector_field') or not hasattr(model, 'vector_field'):
            e = '`vector_field` mode needs a flow and a NeuralODE surrogate.'

            logger.error(e)

            raise ex.ConfigError(e)

        v_true = np.stack([system.vector_field(row) for row in x])
        v_model = model.vector_field(x)

    elif mode == 'displacement':
        y_model = model.forward(x)

        if system.kind == 'flow':
            v_true = (orbit.states[1:] - x) / system.dt
            v_model = (y_model - x) / system.dt
        else:
            v_true, v_model = orbit.states[1:], y_model

    else:
        e = f'`mode` should be `displacement` or `vector_field`, got {mode}.'

        logger.error(e)

        raise ex.ConfigError(e)

    norms = np.linalg.norm(v_true, axis=-1)
    keep = norms >= c.VELOCITY_FLOOR
    skipped = int((~keep).sum())

    if not keep.any():
        e = f'Every one of the {len(x)} points has a true velocity below {c.VELOCITY_FLOOR}.'

        logger.error(e)

        raise ex.DivisionNearZero(e)

    if skipped:
        logger.warning('Relative error skipped %d points with near-zero velocity.', skipped)

    errors = np.linalg.norm(v_true[keep] - v_model[keep], axis=-1) / norms[keep]

    error = float(np.mean(errors))

    if with_skipped:
        return error, skipped

    return error
