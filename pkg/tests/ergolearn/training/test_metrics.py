import numpy as np
import pytest

from ergolearn.datasets import make_dataset
from ergolearn.models import ExactModel
from ergolearn.systems import LinearMap, Lorenz63, TiltedTentMap
from ergolearn.training import LossSpec, empirical_risk, relative_error
from ergolearn.utils import exception as ex


def test_empirical_risk():
    system = TiltedTentMap(s=0.2)
    orbit = system.orbit(np.array([0.3]), 50)
    dataset = make_dataset(system, orbit)

    assert empirical_risk(ExactModel(system), dataset, LossSpec('mse')) == pytest.approx(0.0, abs=1e-12)
    assert empirical_risk(ExactModel(system, bias=[0.1]), dataset, LossSpec('mse')) == pytest.approx(0.01)
    assert empirical_risk(ExactModel(system, bias=[0.1]), dataset, LossSpec('jac', lam=500.0)) == pytest.approx(0.01)


def test_empirical_risk_missing_jacobians():
    system = TiltedTentMap(s=0.2)
    dataset = make_dataset(system, system.orbit(np.array([0.3]), 10), with_jacobians=False)

    with pytest.raises(ex.MissingJacobians):
        empirical_risk(ExactModel(system), dataset, LossSpec('jac', lam=1.0))


def test_relative_error_map():
    system = TiltedTentMap(s=0.2)
    orbit = system.orbit(np.array([0.3]), 50)

    assert relative_error(ExactModel(system), system, orbit) == 0.0

    expected = np.mean(0.01 / np.abs(orbit.states[1:, 0]))

    assert relative_error(ExactModel(system, bias=[0.01]), system, orbit) == pytest.approx(expected)


def test_relative_error_flow():
    system = Lorenz63()
    orbit = system.orbit(system.default_state(), 20)

    assert relative_error(ExactModel(system), system, orbit) == pytest.approx(0.0, abs=1e-12)


def test_relative_error_near_zero():
    system = LinearMap([[0.0]])
    orbit = system.orbit(np.array([1.0]), 5)

    with pytest.raises(ex.DivisionNearZero):
        relative_error(ExactModel(system), system, orbit)


def test_relative_error_skipped():
    system = LinearMap([[0.5]])
    orbit = system.orbit(np.array([1.0]), 60)

    # Images after the 40th step fall below the velocity floor
    n_small = int(np.sum(np.abs(orbit.states[1:, 0]) < 1e-12))

    error, skipped = relative_error(ExactModel(system), system, orbit, with_skipped=True)

    assert n_small > 0
    assert skipped == n_small
    assert error == 0.0

    biased, skipped = relative_error(ExactModel(system, bias=[1e-3]), system, orbit, with_skipped=True)
    keep = np.abs(orbit.states[1:, 0]) >= 1e-12

    assert skipped == n_small
    assert biased == pytest.approx(np.mean(1e-3 / np.abs(orbit.states[1:, 0][keep])))


def test_relative_error_mode():
    system = TiltedTentMap(s=0.2)
    orbit = system.orbit(np.array([0.3]), 5)

    with pytest.raises(ex.ConfigError):
        relative_error(ExactModel(system), system, orbit, mode='vector_field')

    with pytest.raises(ex.ConfigError):
        relative_error(ExactModel(system), system, orbit, mode='angle')
