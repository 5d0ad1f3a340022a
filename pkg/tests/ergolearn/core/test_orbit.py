import numpy as np
import pytest

from ergolearn.core import Orbit, TangentFrame
from ergolearn.utils import exception as ex


def test_orbit():
    orbit = Orbit(np.arange(10.0).reshape(5, 2))

    assert len(orbit) == 5
    assert orbit.n_steps == 4
    assert orbit.n_dim == 2
    assert np.array_equal(orbit[1], [2.0, 3.0])
    assert np.array_equal(orbit.x0, [0.0, 1.0])


def test_orbit_shape():
    with pytest.raises(ex.ShapeMismatch):
        Orbit(np.zeros(3))


def test_orbit_slice():
    orbit = Orbit(np.arange(10.0).reshape(5, 2))

    part = orbit.slice(1, 3)

    assert len(part) == 2
    assert np.array_equal(part.states, orbit.states[1:3])


def test_tangent_frame():
    frame = TangentFrame(2)

    for _ in range(3):
        frame.push(np.diag([2.0, 0.5]))
        frame.reorthonormalize()

    assert np.allclose(frame.log_norms, [3 * np.log(2.0), 3 * np.log(0.5)])
    assert np.allclose(frame.basis, np.eye(2))


def test_tangent_frame_k():
    frame = TangentFrame(3, 1)

    assert frame.basis.shape == (3, 1)

    with pytest.raises(ex.ConfigError):
        TangentFrame(2, 3)


def test_tangent_frame_degenerate():
    frame = TangentFrame(2)
    frame.push(np.zeros((2, 2)))

    with pytest.raises(ex.DegenerateFrame):
        frame.reorthonormalize()
