import numpy as np
import pytest

from ergolearn.systems import LinearFlow, LinearMap, Lorenz63, TiltedTentMap
from ergolearn.utils import exception as ex


def test_system_params():
    system = TiltedTentMap(s=0.3)

    assert system.name == 'tent_tilted'
    assert system.n_dim == 1
    assert system.params['s'] == 0.3

    with pytest.raises(TypeError):
        system.params['s'] = 0.5


def test_system_step():
    system = LinearMap([[2.0, 0.0], [0.0, 0.5]])

    assert np.array_equal(system.step(np.array([1.0, 1.0])), np.array([2.0, 0.5]))
    assert np.array_equal(system.jacobian(np.array([3.0, 4.0])), np.diag([2.0, 0.5]))


def test_system_step_shape():
    system = LinearMap([[2.0, 0.0], [0.0, 0.5]])

    with pytest.raises(ex.ShapeMismatch):
        system.step(np.array([1.0, 2.0, 3.0]))


def test_system_tangent():
    system = Lorenz63()
    x = system.default_state()

    y, jac = system.tangent(x)

    assert np.array_equal(y, system.step(x))
    assert np.allclose(jac, system.jacobian(x), rtol=0, atol=1e-14)


def test_system_orbit():
    system = LinearMap([[0.5]])

    orbit = system.orbit(np.array([1.0]), 3)

    assert len(orbit) == 4
    assert orbit.n_steps == 3
    assert np.allclose(orbit.states[:, 0], [1.0, 0.5, 0.25, 0.125])

    orbit = system.orbit(np.array([1.0]), 2, spinup=2)

    assert np.allclose(orbit.states[:, 0], [0.25, 0.125, 0.0625])
    assert np.array_equal(orbit.x0, [1.0])


def test_system_orbit_config():
    system = LinearMap([[0.5]])

    with pytest.raises(ex.ConfigError):
        system.orbit(np.array([1.0]), 0)

    with pytest.raises(ex.ConfigError):
        system.orbit(np.array([1.0]), 1, spinup=-1)


def test_system_orbit_non_finite():
    system = LinearMap([[1e200]])

    with pytest.raises(ex.NonFiniteState) as error:
        system.orbit(np.array([1e200]), 5)

    assert error.value.index == 1

    with pytest.raises(ex.NonFiniteState) as error:
        system.orbit(np.array([1.0]), 5, spinup=1)

    assert error.value.index == 2


def test_ode_flow_rk4():
    h = 0.1
    system = LinearFlow([[-1.0]], dt=h)

    taylor = 1 - h + h ** 2 / 2 - h ** 3 / 6 + h ** 4 / 24

    assert system.step(np.array([1.0]))[0] == pytest.approx(taylor, abs=1e-15)
    assert system.jacobian(np.array([1.0]))[0, 0] == pytest.approx(taylor, abs=1e-15)
    assert system.time_unit == h


def test_ode_flow_substeps():
    h = 0.05
    system = LinearFlow([[-1.0]], dt=2 * h, substeps=2)

    taylor = 1 - h + h ** 2 / 2 - h ** 3 / 6 + h ** 4 / 24

    assert system.step(np.array([1.0]))[0] == pytest.approx(taylor ** 2, abs=1e-15)
    assert system.jacobian(np.array([3.0]))[0, 0] == pytest.approx(taylor ** 2, abs=1e-15)


def test_ode_flow_rk4_order():
    states = Lorenz63().orbit(Lorenz63().default_state(), 500, spinup=500).states[::50]

    def one_step_error(dt):
        coarse, fine = Lorenz63(dt=dt), Lorenz63(dt=dt, substeps=100)

        return sum(np.linalg.norm(coarse.step(x) - fine.step(x)) for x in states)

    # Local truncation error of RK4 is O(dt^5)
    ratio = one_step_error(0.01) / one_step_error(0.005)

    assert 24 <= ratio <= 40


def test_ode_flow_jacobian_finite_differences():
    system = Lorenz63()
    x = system.default_state()
    eps = 1e-6

    fd = np.stack([(system.step(x + eps * e) - system.step(x - eps * e)) / (2 * eps) for e in np.eye(3)], axis=1)

    assert np.allclose(system.jacobian(x), fd, atol=1e-6)


def test_system_to_dict():
    system = Lorenz63(dt=0.02, substeps=2)

    spec = system.to_dict()

    assert spec['system'] == 'lorenz63'
    assert spec['params']['rho'] == 28.0
    assert spec['dt'] == 0.02
    assert spec['substeps'] == 2
