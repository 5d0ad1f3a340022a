import numpy as np
import pytest

from ergolearn.models import ExactModel
from ergolearn.shadowing import PseudoOrbit, measure_defects
from ergolearn.systems import Lorenz63, TiltedTentMap
from ergolearn.utils import exception as ex


def test_pseudo_orbit_from_states():
    system = TiltedTentMap(s=0.2)
    states = system.orbit(np.array([0.3]), 10).states

    pseudo = PseudoOrbit.from_states(system, states)

    assert len(pseudo) == 11
    assert pseudo.n_steps == 10
    assert np.all(pseudo.defects == 0)
    assert pseudo.jac_defects is None

    states[5] += 1e-3
    pseudo = PseudoOrbit.from_states(system, states)

    assert pseudo.defects[4] == pytest.approx(1e-3)
    assert pseudo.defects[0] == 0
    assert pseudo.to_dict()['defects']['max'] > 1e-3


def test_pseudo_orbit_shape():
    with pytest.raises(ex.ShapeMismatch):
        PseudoOrbit.from_states(TiltedTentMap(), np.zeros((5, 2)))

    with pytest.raises(ex.ShapeMismatch):
        PseudoOrbit.from_states(TiltedTentMap(), np.zeros((1, 1)))


def test_measure_defects_exact():
    system = Lorenz63()

    pseudo = measure_defects(system, ExactModel(system), system.default_state(), 50)

    assert pseudo.n_steps == 50
    assert np.all(pseudo.defects == 0)
    assert np.allclose(pseudo.jac_defects, 0.0)


def test_measure_defects_bias():
    system = Lorenz63()
    bias = np.array([1e-3, -2e-3, 0.0])

    pseudo = measure_defects(system, ExactModel(system, bias=bias), system.default_state(), 50)

    assert np.allclose(pseudo.defects, np.linalg.norm(bias), rtol=1e-9)
    assert np.allclose(pseudo.jac_defects, 0.0)


def test_measure_defects_dimension():
    with pytest.raises(ex.DimensionMismatch):
        measure_defects(Lorenz63(), ExactModel(TiltedTentMap()), np.zeros(3), 5)
