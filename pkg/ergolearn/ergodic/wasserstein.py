"""Wasserstein-1 distances between equal-weight empirical measures.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist
from scipy.stats import wasserstein_distance

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)

METHODS = ('auto', 'exact1d', 'assignment', 'sliced')


class EmpiricalMeasure:
    """An EmpiricalMeasure class holds an equal-weight point cloud.

    """

    def __init__(self, points):
        """Initialization method.

        Args:
            points (np.array): Samples of shape (n, d), or (n,) for one-dimensional clouds.

        """

        points = np.asarray(points, dtype=np.float64)

        if points.ndim == 1:
            points = points[:, None]

        if points.ndim != 2 or points.shape[0] < 1 or not np.all(np.isfinite(points)):
            e = f'`points` should be a non-empty finite (n, d) array, got shape {points.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        self.points = points

    def __len__(self):
        return self.points.shape[0]

    @property
    def n_dim(self):
        """int: Dimension of the samples.

        """

        return self.points.shape[1]

    @classmethod
    def from_orbit(cls, orbit):
        """Builds the empirical measure of an orbit's states.

        Args:
            orbit (Orbit): An orbit.

        Returns:
            An EmpiricalMeasure.

        """

        return cls(orbit.states)


def _exact1d(a, b):
    if a.shape == b.shape:
        return float(np.mean(np.abs(np.sort(a) - np.sort(b))))

    return float(wasserstein_distance(a, b))


def _assignment(a, b):
    if len(a) != len(b):
        e = f'Assignment needs equal sample counts, got {len(a)} and {len(b)}.'

        logger.error(e)

        raise ex.UnequalCounts(e)

    cost = cdist(a.points, b.points)
    rows, cols = linear_sum_assignment(cost)

    return float(cost[rows, cols].sum() / len(a))


def projections(n_dim, n_projections, seed):
    """Draws seeded unit directions.

    Args:
        n_dim (int): Dimension of the directions.
        n_projections (int): Number of directions.
        seed (int): Seed of the draw.

    Returns:
        An array of shape (n_projections, n_dim) with unit rows.

    """

    directions = np.random.default_rng(seed).standard_normal((n_projections, n_dim))

    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def _sliced(a, b, n_projections, seed):
    directions = projections(a.n_dim, n_projections, seed)

    return float(np.mean([_exact1d(a.points @ u, b.points @ u) for u in directions]))


def resolve_method(a, b, method='auto'):
    """Chooses the concrete method behind `auto`.

    Exact assignment is used for equal counts up to a few thousand points, sorted
    differences for one-dimensional clouds, and sliced projections otherwise.

    Args:
        a (EmpiricalMeasure): First measure.
        b (EmpiricalMeasure): Second measure.
        method (str): Requested method.

    Returns:
        The concrete method name.

    """

    if method not in METHODS:
        e = f'`method` should be one of {METHODS}, got {method}.'

        logger.error(e)

        raise ex.ConfigError(e)

    if method != 'auto':
        return method

    if a.n_dim == 1:
        return 'exact1d'

    if len(a) == len(b) and len(a) <= c.ASSIGNMENT_MAX_POINTS:
        return 'assignment'

    return 'sliced'


def wasserstein1(a, b, method='auto', n_projections=c.SLICED_PROJECTIONS, seed=0):
    """Computes the Wasserstein-1 distance between two empirical measures.

    Args:
        a (EmpiricalMeasure | np.array): First measure.
        b (EmpiricalMeasure | np.array): Second measure.
        method (str): `exact1d`, `assignment`, `sliced` or `auto`.
        n_projections (int): Number of directions of the sliced method.
        seed (int): Seed of the sliced directions.

    Returns:
        The distance.

    """

    a = a if isinstance(a, EmpiricalMeasure) else EmpiricalMeasure(a)
    b = b if isinstance(b, EmpiricalMeasure) else EmpiricalMeasure(b)

    if a.n_dim != b.n_dim:
        e = f'Measures live in dimensions {a.n_dim} and {b.n_dim}.'

        logger.error(e)

        raise ex.DimensionMismatch(e)

    method = resolve_method(a, b, method)

    if method == 'exact1d':
        if a.n_dim != 1:
            e = f'`exact1d` needs one-dimensional samples, got d={a.n_dim}.'

            logger.error(e)

            raise ex.DimensionMismatch(e)

        return _exact1d(a.points[:, 0], b.points[:, 0])

    if method == 'assignment':
        return _assignment(a, b)

    return _sliced(a, b, n_projections, seed)
