import itertools

import numpy as np
import pytest

from ergolearn.core import Orbit
from ergolearn.ergodic import EmpiricalMeasure, resolve_method, wasserstein1
from ergolearn.utils import exception as ex


def test_empirical_measure():
    measure = EmpiricalMeasure(np.arange(5.0))

    assert len(measure) == 5
    assert measure.n_dim == 1

    measure = EmpiricalMeasure.from_orbit(Orbit(np.zeros((4, 3))))

    assert measure.points.shape == (4, 3)

    with pytest.raises(ex.ShapeMismatch):
        EmpiricalMeasure(np.array([np.nan, 1.0]))


def test_wasserstein1_identity():
    points = np.random.default_rng(0).normal(size=(100, 2))

    for method in ('assignment', 'sliced'):
        assert wasserstein1(points, points, method) == pytest.approx(0.0, abs=1e-12)


def test_wasserstein1_shift_1d():
    points = np.random.default_rng(0).normal(size=200)

    assert wasserstein1(points, points + 0.3, 'exact1d') == pytest.approx(0.3)
    assert wasserstein1(points, points + 0.3, 'assignment') == pytest.approx(0.3)
    assert wasserstein1(points[:150], points + 0.3, 'exact1d') > 0


def test_wasserstein1_shift():
    points = np.random.default_rng(1).normal(size=(100, 3))
    shift = np.array([0.3, -0.4, 0.0])

    exact = wasserstein1(points, points + shift, 'assignment')
    sliced = wasserstein1(points, points + shift, 'sliced', n_projections=50, seed=3)

    assert exact == pytest.approx(0.5)
    assert sliced <= exact + 1e-12


def test_wasserstein1_sliced_seed():
    a = np.random.default_rng(0).normal(size=(50, 2))
    b = np.random.default_rng(1).normal(size=(70, 2))

    assert wasserstein1(a, b, 'sliced', seed=5) == wasserstein1(a, b, 'sliced', seed=5)


def test_wasserstein1_errors():
    with pytest.raises(ex.UnequalCounts):
        wasserstein1(np.zeros((3, 2)), np.zeros((4, 2)), 'assignment')

    with pytest.raises(ex.DimensionMismatch):
        wasserstein1(np.zeros((3, 2)), np.zeros((3, 3)))

    with pytest.raises(ex.DimensionMismatch):
        wasserstein1(np.zeros((3, 2)), np.zeros((3, 2)), 'exact1d')

    with pytest.raises(ex.ConfigError):
        wasserstein1(np.zeros(3), np.zeros(3), 'sinkhorn')


def test_resolve_method():
    small = EmpiricalMeasure(np.zeros((10, 2)))
    large = EmpiricalMeasure(np.zeros((3000, 2)))

    assert resolve_method(small, small) == 'assignment'
    assert resolve_method(small, large) == 'sliced'
    assert resolve_method(large, large) == 'sliced'
    assert resolve_method(EmpiricalMeasure(np.zeros(10)), EmpiricalMeasure(np.zeros(20))) == 'exact1d'
    assert resolve_method(small, small, 'sliced') == 'sliced'


def _brute_force(a, b):
    a, b = np.atleast_2d(a), np.atleast_2d(b)

    return min(np.mean(np.linalg.norm(a - b[list(p)], axis=1)) for p in itertools.permutations(range(len(a))))


def test_wasserstein1_two_points_1d():
    a, b = np.array([0.0, 2.0]), np.array([1.0, 3.0])

    # The sorted matching costs (1 + 1) / 2 and the crossed one (3 + 1) / 2
    for method in ('exact1d', 'assignment', 'sliced'):
        assert wasserstein1(a, b, method) == pytest.approx(1.0, abs=1e-12)

    assert wasserstein1(np.array([0.0]), np.array([1.0])) == 1.0


def test_wasserstein1_exact1d_sorted_differences():
    rng = np.random.default_rng(4)
    a, b = rng.normal(size=40), rng.uniform(size=40)

    assert wasserstein1(a, b, 'exact1d') == pytest.approx(np.mean(np.abs(np.sort(a) - np.sort(b))), abs=1e-14)


def test_wasserstein1_six_points_2d():
    rng = np.random.default_rng(6)
    a, b = rng.normal(size=(6, 2)), rng.normal(size=(6, 2))

    assert wasserstein1(a, b, 'assignment') == pytest.approx(_brute_force(a, b), abs=1e-12)


def test_wasserstein1_brute_force():
    rng = np.random.default_rng(7)

    for _ in range(50):
        n, d = rng.integers(1, 8), rng.integers(1, 4)
        a, b = rng.normal(size=(n, d)), rng.normal(size=(n, d))

        assert wasserstein1(a, b, 'assignment') == pytest.approx(_brute_force(a, b), abs=1e-12)


def test_wasserstein1_metric():
    rng = np.random.default_rng(8)

    for _ in range(20):
        a, b, c = (rng.normal(size=(30, 3)) + rng.normal(size=3) for _ in range(3))

        ab, ba = wasserstein1(a, b, 'assignment'), wasserstein1(b, a, 'assignment')
        bc, ac = wasserstein1(b, c, 'assignment'), wasserstein1(a, c, 'assignment')

        assert ab == pytest.approx(ba, abs=1e-12)
        assert ac <= ab + bc + 1e-12


def test_wasserstein1_sliced_lower_bound():
    rng = np.random.default_rng(9)

    for seed in range(20):
        a, b = rng.normal(size=(40, 3)), rng.standard_t(3, size=(40, 3))

        # Projections onto unit directions are 1-Lipschitz
        assert wasserstein1(a, b, 'sliced', n_projections=20, seed=seed) <= wasserstein1(a, b, 'assignment') + 1e-12
