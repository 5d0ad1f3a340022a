import numpy as np
import pytest

from ergolearn.datasets import OrbitDataset, make_dataset, orbit_jacobians, split_orbit
from ergolearn.systems import LinearMap, TiltedTentMap
from ergolearn.utils import exception as ex


def test_orbit_jacobians():
    system = TiltedTentMap(s=0.2)

    jacobians = orbit_jacobians(system, np.array([[0.5], [1.2], [1.5]]))

    assert jacobians.shape == (3, 1, 1)
    assert jacobians[0, 0, 0] == pytest.approx(2 / 1.2)
    assert np.isnan(jacobians[1, 0, 0])


def test_orbit_dataset():
    states = np.arange(12.0).reshape(6, 2)

    dataset = OrbitDataset(states)

    assert len(dataset) == 5
    assert np.array_equal(dataset.inputs, states[:-1])
    assert np.array_equal(dataset.targets, states[1:])
    assert not dataset.has_jacobians


def test_orbit_dataset_drops_kinks():
    system = TiltedTentMap(s=0.2)
    states = np.array([[0.5], [1.2], [0.3]])

    dataset = OrbitDataset(states, orbit_jacobians(system, states))

    assert len(dataset) == 1
    assert np.array_equal(dataset.inputs, [[0.5]])
    assert np.array_equal(dataset.states, states)


def test_orbit_dataset_windows():
    states = np.arange(10.0).reshape(10, 1)
    dataset = OrbitDataset(states)

    starts, window = dataset.windows(3)

    assert starts.shape == (7, 1)
    assert window.shape == (7, 3, 1)
    assert np.array_equal(window[2, :, 0], [3.0, 4.0, 5.0])

    with pytest.raises(ex.ConfigError):
        dataset.windows(10)


def test_orbit_dataset_build():
    dataset = OrbitDataset(np.arange(10.0).reshape(10, 1), shuffle=False)

    batch = next(iter(dataset.build(k=2)))

    assert set(batch) == {'x', 'window'}
    assert batch['window'].shape == (8, 2, 1)


def test_make_dataset():
    system = LinearMap([[0.5, 0.0], [0.0, 2.0]])
    orbit = system.orbit(np.array([1.0, 1.0]), 5)

    dataset = make_dataset(system, orbit)

    assert len(dataset) == 5
    assert dataset.has_jacobians
    assert np.allclose(dataset.jacobians[0], system.A)
    assert not make_dataset(system, orbit, with_jacobians=False).has_jacobians


def test_split_orbit():
    system = TiltedTentMap(s=0.2)
    orbit = system.orbit(np.array([0.3]), 30)

    train, test = split_orbit(orbit, 20, 10)

    assert len(train) == 21
    assert len(test) == 11
    assert np.array_equal(train.states[-1], test.states[0])
    assert np.array_equal(test.states[-1], orbit.states[30])


def test_split_orbit_too_short():
    orbit = TiltedTentMap().orbit(np.array([0.3]), 10)

    with pytest.raises(ex.ConfigError):
        split_orbit(orbit, 8, 8)
