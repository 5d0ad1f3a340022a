import numpy as np
import pytest

from ergolearn.systems import LinearFlow, LinearMap
from ergolearn.utils import exception as ex


def test_linear_map():
    system = LinearMap([[2.0, 1.0], [0.0, 0.5]])

    assert np.allclose(system.step(np.array([1.0, 1.0])), [3.0, 0.5])
    assert system.log_det() == pytest.approx(0.0, abs=1e-15)


def test_linear_map_square():
    with pytest.raises(ex.ShapeMismatch):
        LinearMap([[1.0, 2.0]])


def test_linear_flow_exact_step():
    system = LinearFlow([[0.0, 1.0], [-1.0, 0.0]], dt=0.01)

    assert np.allclose(system.jacobian(np.zeros(2)), system.exact_step(), atol=1e-10)
