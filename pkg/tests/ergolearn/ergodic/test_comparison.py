import csv

import numpy as np
import pytest

from ergolearn.ergodic import compare_models, model_orbit
from ergolearn.models import ExactModel
from ergolearn.systems import BakerMap, LinearMap, TiltedTentMap
from ergolearn.utils import exception as ex
from ergolearn.utils.config import EvalConfig


def test_model_orbit():
    system = TiltedTentMap(s=0.2)

    orbit = model_orbit(ExactModel(system), np.array([0.3]), 20)

    assert np.array_equal(orbit.states, system.orbit(np.array([0.3]), 20).states)


def test_model_orbit_blow_up():
    model = ExactModel(LinearMap([[1.0]]), bias=[1e308])

    with pytest.raises(ex.NonFiniteState) as error:
        model_orbit(model, np.array([1e308]), 5)

    assert error.value.index == 1


def test_compare_models_self(tmp_path):
    system = BakerMap(s=0.1)
    cfg = EvalConfig(le_steps=500, le_ensemble=2, le_spinup=10, bins=10)

    table = compare_models(system, {'exact': (ExactModel(system), 'exact'),
                                    'biased': (ExactModel(system, bias=[0.05, 0.0]), 'exact')}, 500, 2, cfg)

    exact, biased = table.rows

    assert exact.W1 == 0.0
    assert exact.LE_diff == 0.0
    assert exact.mean_diff == 0.0
    assert exact.w1_method == 'assignment'
    assert biased.mean_diff > 0
    assert biased.W1 > 0
    assert table.settings['steps'] == 500

    table.to_csv(str(tmp_path / 'comparison.csv'))

    with open(tmp_path / 'comparison.csv') as f:
        rows = list(csv.reader(f))

    assert rows[0] == ['model', 'loss', 'W1', 'LE_diff', 'mean_diff', 'w1_method']
    assert rows[1][0] == 'exact'
    assert float(rows[1][2]) == 0.0


def test_compare_models_spectra(tmp_path):
    system = TiltedTentMap(s=0.2)
    cfg = EvalConfig(le_steps=500, le_ensemble=1, le_spinup=10)

    table = compare_models(system, {'exact': (ExactModel(system), 'exact')}, 100, 1, cfg)
    table.spectra_to_json(str(tmp_path / 'spectrum.json'))

    assert set(table.spectra) == {'truth', 'exact'}
    assert (tmp_path / 'spectrum.json').exists()
