import numpy as np
import pytest

from ergolearn.models import MLP, ExactModel
from ergolearn.systems import Lorenz63
from ergolearn.utils import exception as ex
from ergolearn.utils.checkpoint import load_checkpoint, save_checkpoint


@pytest.mark.parametrize('name', ['model.ckpt', 'model.json'])
def test_checkpoint(tmp_path, name):
    model = MLP(3, units=(8, 8), seed=1)
    x = np.array([1.0, -2.0, 0.5])
    path = str(tmp_path / name)

    save_checkpoint(path, model, {'loss': 'jac', 'best_epoch': 4})
    loaded, meta = load_checkpoint(path)

    assert meta == {'loss': 'jac', 'best_epoch': 4}
    assert loaded.get_config() == model.get_config()
    assert np.array_equal(loaded.forward(x), model.forward(x))


def test_checkpoint_exact(tmp_path):
    model = ExactModel(Lorenz63(), bias=[0.1, 0.0, 0.0])
    path = str(tmp_path / 'exact.json')

    save_checkpoint(path, model)
    loaded, _ = load_checkpoint(path)

    assert np.array_equal(loaded.forward(np.ones(3)), model.forward(np.ones(3)))


def test_checkpoint_invalid(tmp_path):
    path = str(tmp_path / 'model.ckpt')

    save_checkpoint(path, MLP(2, units=(4,)))

    with open(path, 'ab') as f:
        f.write(bytes(8))

    with pytest.raises(ex.ConfigError):
        load_checkpoint(path)

    with pytest.raises(FileNotFoundError):
        load_checkpoint(str(tmp_path / 'missing.ckpt'))
