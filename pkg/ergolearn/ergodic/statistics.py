"""Time averages and histograms of orbits.
"""

import csv
import os
from dataclasses import dataclass

import numpy as np

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)


@dataclass
class OrbitStatistics:
    mean: np.ndarray
    variance: np.ndarray
    edges: list
    densities: list

    def to_dict(self):
        return {'mean': self.mean.tolist(), 'variance': self.variance.tolist()}


def histogram_edges(states, bins=c.HISTOGRAM_BINS):
    """Builds uniform bins spanning each coordinate of a reference orbit.

    Args:
        states (np.array): Reference states of shape (n, d).
        bins (int): Number of bins per coordinate.

    Returns:
        A list with the bin edges of every coordinate.

    """

    return [np.histogram_bin_edges(states[:, i], bins=bins) for i in range(states.shape[1])]


def orbit_statistics(orbit, edges=None, bins=c.HISTOGRAM_BINS):
    """Computes the time average, the componentwise variance and per-coordinate histograms.

    Args:
        orbit (Orbit): An orbit with at least two states.
        edges (list): Shared bin edges per coordinate (defaults to the orbit's own range).
        bins (int): Number of bins when edges are not given.

    Returns:
        An OrbitStatistics.

    """

    states = orbit.states

    if states.shape[0] < 2:
        e = f'Statistics need at least two states, got {states.shape[0]}.'

        logger.error(e)

        raise ex.ConfigError(e)

    edges = histogram_edges(states, bins) if edges is None else edges

    # Densities over the shared bins, so samples outside them are not counted
    densities = [np.histogram(states[:, i], bins=edges[i])[0] / (states.shape[0] * np.diff(edges[i]))
                 for i in range(states.shape[1])]

    return OrbitStatistics(states.mean(axis=0), states.var(axis=0), edges, densities)


def save_histograms(output_dir, truth, model, prefix=''):
    """Writes one `histogram_<coord>.csv` per coordinate with columns `bin_left,bin_right,truth,model`.

    Args:
        output_dir (str): Output directory.
        truth (OrbitStatistics): Statistics of the reference orbit.
        model (OrbitStatistics): Statistics of the model orbit, over the same bins.
        prefix (str): Prefix of the file names.

    Returns:
        The written paths.

    """

    paths = []

    for i, edges in enumerate(truth.edges):
        path = os.path.join(output_dir, f'{prefix}histogram_{i}.csv')

        with open(path, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(['bin_left', 'bin_right', 'truth', 'model'])

            for row in zip(edges[:-1], edges[1:], truth.densities[i], model.densities[i]):
                writer.writerow([repr(float(v)) for v in row])

        paths.append(path)

    return paths
