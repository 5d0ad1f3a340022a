import csv

import numpy as np
import pytest

from ergolearn.core import Orbit
from ergolearn.ergodic import histogram_edges, orbit_statistics, save_histograms
from ergolearn.utils import exception as ex


def test_orbit_statistics():
    states = np.random.default_rng(0).normal(size=(1000, 2))

    stats = orbit_statistics(Orbit(states), bins=20)

    assert np.allclose(stats.mean, states.mean(axis=0), atol=1e-12)
    assert np.allclose(stats.variance, states.var(axis=0), atol=1e-12)
    assert len(stats.edges) == 2
    assert len(stats.densities[0]) == 20

    for edges, density in zip(stats.edges, stats.densities):
        assert np.sum(density * np.diff(edges)) == pytest.approx(1.0)


def test_orbit_statistics_streaming_mean():
    states = np.random.default_rng(1).uniform(size=(1000, 1))

    mean = 0.0
    for t, x in enumerate(states[:, 0]):
        mean += (x - mean) / (t + 1)

    assert orbit_statistics(Orbit(states)).mean[0] == pytest.approx(mean, abs=1e-12)


def test_orbit_statistics_shared_edges():
    truth = np.random.default_rng(0).uniform(size=(500, 1))
    edges = histogram_edges(truth, 10)

    stats = orbit_statistics(Orbit(truth + 5.0), edges=edges)

    assert np.all(stats.densities[0] == 0)


def test_orbit_statistics_too_short():
    with pytest.raises(ex.ConfigError):
        orbit_statistics(Orbit(np.zeros((1, 2))))


def test_save_histograms(tmp_path):
    states = np.random.default_rng(0).normal(size=(100, 2))
    truth = orbit_statistics(Orbit(states), bins=5)
    model = orbit_statistics(Orbit(states[::-1]), edges=truth.edges)

    paths = save_histograms(str(tmp_path), truth, model)

    assert [p.split('/')[-1] for p in paths] == ['histogram_0.csv', 'histogram_1.csv']

    with open(paths[0]) as f:
        rows = list(csv.reader(f))

    assert rows[0] == ['bin_left', 'bin_right', 'truth', 'model']
    assert len(rows) == 6
    assert rows[1][2] == rows[1][3]
