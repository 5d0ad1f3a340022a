import numpy as np
import pytest

from ergolearn.shadowing import PseudoOrbit, orbit_operator, orbit_residuals, refine_shadow
from ergolearn.systems import BakerMap, LinearMap, Lorenz63, TiltedTentMap
from ergolearn.utils import exception as ex


def _noisy(system, x0, n, noise, seed=0):
    states = system.orbit(x0, n).states
    states = states + np.random.default_rng(seed).uniform(-noise, noise, size=states.shape)

    return PseudoOrbit.from_states(system, states)


def test_orbit_operator():
    jacobians = np.array([[[2.0]], [[3.0]]])

    M = orbit_operator(jacobians).toarray()

    assert np.array_equal(M, [[2.0, -1.0, 0.0], [0.0, 3.0, -1.0]])


def test_orbit_residuals():
    system = LinearMap([[2.0]])

    residuals = orbit_residuals(system, np.array([[1.0], [2.0], [4.5]]))

    assert np.allclose(residuals[:, 0], [0.0, -0.5])


def test_refine_shadow_linear():
    system = LinearMap([[2.0]])
    pseudo = PseudoOrbit.from_states(system, np.array([[1.0], [2.0], [4.5]]))

    result = refine_shadow(system, pseudo)

    assert result.converged
    assert result.iterations == 1
    assert np.allclose(result.corrections[:, 0], [2 / 21, 4 / 21, -2.5 / 21])
    assert result.shadow_distance == pytest.approx(4 / 21)
    assert not result.near_singular


def test_refine_shadow_true_orbit():
    system = TiltedTentMap(s=0.2)
    pseudo = PseudoOrbit.from_states(system, system.orbit(np.array([0.3]), 50).states)

    result = refine_shadow(system, pseudo)

    assert result.converged
    assert result.iterations == 0
    assert result.shadow_distance == 0.0
    assert np.isnan(result.min_pivot)


def test_refine_shadow_tent():
    system = TiltedTentMap(s=0.2)
    pseudo = _noisy(system, np.array([0.3]), 200, 1e-6)

    result = refine_shadow(system, pseudo, tol=1e-12)

    assert result.converged
    assert result.residual < 1e-12
    assert result.shadow_distance < 20e-6
    assert result.residual_history[0] == pytest.approx(np.max(pseudo.defects))


def test_refine_shadow_scaling():
    system = TiltedTentMap(s=0.2)

    small = refine_shadow(system, _noisy(system, np.array([0.3]), 100, 1e-7), tol=1e-13)
    large = refine_shadow(system, _noisy(system, np.array([0.3]), 100, 1e-5), tol=1e-11)

    assert large.shadow_distance / small.shadow_distance == pytest.approx(100, rel=0.5)


def test_refine_shadow_baker():
    system = BakerMap(s=0.1)
    pseudo = _noisy(system, system.default_state(), 200, 1e-6)

    result = refine_shadow(system, pseudo, tol=1e-11)

    assert result.converged
    assert result.residual < 1e-10
    assert result.shadow_distance < 20e-6


def test_refine_shadow_deterministic():
    system = TiltedTentMap(s=0.2)
    pseudo = _noisy(system, np.array([0.3]), 100, 1e-6)

    a = refine_shadow(system, pseudo)
    b = refine_shadow(system, pseudo)

    assert np.array_equal(a.states, b.states)
    assert a.residual_history == b.residual_history


def test_refine_shadow_no_convergence():
    system = TiltedTentMap(s=0.2)
    pseudo = _noisy(system, np.array([0.3]), 50, 1e-4)

    with pytest.raises(ex.NoConvergence) as error:
        refine_shadow(system, pseudo, max_iter=0)

    result = error.value.result

    assert not result.converged
    assert result.iterations == 0
    assert result.to_dict()['converged'] is False


def test_refine_shadow_invalid():
    system = TiltedTentMap(s=0.2)

    with pytest.raises(ex.ShapeMismatch):
        refine_shadow(system, PseudoOrbit(np.zeros((2, 1)), np.zeros(1)))

    with pytest.raises(ex.NonFiniteState):
        refine_shadow(system, PseudoOrbit(np.array([[0.1], [np.nan], [0.3]]), np.zeros(2)))


@pytest.mark.slow
def test_refine_shadow_lorenz():
    system = Lorenz63()
    pseudo = _noisy(system, system.default_state(), 300, 1e-8)

    result = refine_shadow(system, pseudo, tol=1e-10)

    assert result.converged
    assert result.iterations <= 10
    assert result.shadow_distance < 1e-5


@pytest.mark.slow
def test_refine_shadow_lorenz_quadratic_tail():
    system = Lorenz63()
    x0 = system.orbit(system.default_state(), 1, spinup=500).states[-1]
    pseudo = _noisy(system, x0, 100, 1e-4, seed=1)

    result = refine_shadow(system, pseudo, tol=1e-10)
    history = result.residual_history

    # Pairs well above the rounding floor, once inside the quadratic basin
    tail = [(r, s) for r, s in zip(history[:-1], history[1:]) if r < 1e-3 and s > 1e-11]

    assert result.converged
    assert tail
    assert all(s < 1e4 * r ** 2 for r, s in tail)
