import numpy as np
import pytest

from ergolearn.ergodic import ensemble_lyapunov, log_det_average, lyapunov_spectrum
from ergolearn.systems import Hyperchaos, Lorenz63, Rossler


def test_lorenz_vector_field():
    system = Lorenz63()

    v = system.vector_field(np.array([1.0, 2.0, 3.0]))

    assert np.allclose(v, [10.0, 28.0 - 3.0 - 2.0, 2.0 - 8.0])


def test_lorenz_vector_field_jacobian():
    system = Lorenz63()
    x = np.array([1.0, 2.0, 3.0])
    eps = 1e-6

    fd = np.stack([(system.vector_field(x + eps * e) - system.vector_field(x - eps * e)) / (2 * eps)
                   for e in np.eye(3)], axis=1)

    assert np.allclose(system.vector_field_jacobian(x), fd, atol=1e-6)


def test_lorenz_orbit_bounded():
    system = Lorenz63()

    orbit = system.orbit(system.default_state(), 2000)

    assert np.all(np.abs(orbit.states) < 100)


def test_lorenz_exponent_sum():
    system = Lorenz63()
    x0 = system.orbit(system.default_state(), 1, spinup=500).states[-1]

    # The volume contraction rate is the trace of the vector field Jacobian
    assert log_det_average(system, x0, 1000) == pytest.approx(-(10 + 1 + 8 / 3), abs=0.05)


@pytest.mark.slow
def test_lorenz_exponents():
    system = Lorenz63()

    spectrum = ensemble_lyapunov(system, 20, np.random.default_rng(0), 30000, spinup=1000)

    assert spectrum.ensemble_size == 20
    assert spectrum.exponents[0] == pytest.approx(0.9, abs=0.05)
    assert spectrum.exponents[1] == pytest.approx(0.0, abs=0.05)
    assert spectrum.exponents[2] == pytest.approx(-14.52, abs=0.5)


def test_rossler_vector_field():
    system = Rossler()

    assert np.allclose(system.vector_field(np.array([1.0, 2.0, 3.0])), [-5.0, 1.4, 0.2 + 3.0 * (1.0 - 5.7)])


def test_rossler_jacobian():
    system = Rossler()
    x = np.array([1.0, -2.0, 0.5])
    eps = 1e-6

    fd = np.stack([(system.step(x + eps * e) - system.step(x - eps * e)) / (2 * eps) for e in np.eye(3)], axis=1)

    assert np.allclose(system.jacobian(x), fd, atol=1e-6)


def test_hyperchaos_jacobian():
    system = Hyperchaos()
    x = system.default_state()
    eps = 1e-6

    fd = np.stack([(system.vector_field(x + eps * e) - system.vector_field(x - eps * e)) / (2 * eps)
                   for e in np.eye(4)], axis=1)

    assert system.n_dim == 4
    assert np.allclose(system.vector_field_jacobian(x), fd, atol=1e-5)


@pytest.mark.slow
def test_rossler_exponents():
    system = Rossler()

    spectrum = ensemble_lyapunov(system, 20, np.random.default_rng(0), 30000, spinup=1000)

    assert spectrum.exponents[0] == pytest.approx(0.0665, abs=0.01)
    assert spectrum.exponents[1] == pytest.approx(-0.0004, abs=0.01)
    assert spectrum.exponents[2] == pytest.approx(-5.4112, abs=0.3)


@pytest.mark.slow
def test_hyperchaos_exponents():
    system = Hyperchaos()
    x0 = system.orbit(system.default_state(), 1, spinup=20000).states[-1]

    spectrum = lyapunov_spectrum(system, x0, 1000000)

    error = np.abs(spectrum.exponents - [4.0039, 0.0082, -19.9972, -48.0205])

    assert np.all(error < [0.3, 0.1, 1.0, 2.0])
