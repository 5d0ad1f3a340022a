import numpy as np
import pytest

from ergolearn.datasets import make_dataset, split_orbit
from ergolearn.ergodic import compare_models, lyapunov_spectrum
from ergolearn.models import MLP
from ergolearn.systems import Lorenz63, PluckedTentMap, TiltedTentMap
from ergolearn.training import LossSpec, Trainer, build_optimizer, seed_everything
from ergolearn.utils.config import EvalConfig


def _fit(system, x0, loss, units, skip=False, epochs=2000, n_train=10000, n_test=2000, seed=0, spinup=1000):
    seed_everything(seed)

    orbit = system.orbit(x0, n_train + n_test, spinup=spinup)
    train, test = split_orbit(orbit, n_train, n_test)

    model = MLP(system.n_dim, units=units, skip=skip, seed=seed)

    trainer = Trainer(model, loss)
    trainer.compile(build_optimizer(learning_rate=1e-3))
    report = trainer.fit(make_dataset(system, train), make_dataset(system, test, shuffle=False), epochs=epochs,
                         batch_size=1000, eval_every=50, system=system, test_orbit=test)

    return model, report


def _learned_exponent(system, model, x0):
    start = system.orbit(x0, 1, spinup=1000).states[-1]

    return lyapunov_spectrum(model, start, 100000, spinup=1000).exponents[0]


@pytest.mark.slow
def test_tilted_tent_jacobian_matching():
    system = TiltedTentMap(s=0.2)
    x0 = np.array([0.3])

    truth = lyapunov_spectrum(system, x0, 100000, spinup=1000).exponents[0]
    model, _ = _fit(system, x0, LossSpec('jac', lam=500.0), (64, 64))

    assert _learned_exponent(system, model, x0) == pytest.approx(truth, abs=0.05)


@pytest.mark.slow
def test_plucked_tent_jacobian_matching_misses():
    system = PluckedTentMap(s=0.8)
    x0 = np.array([0.3])

    truth = lyapunov_spectrum(system, x0, 100000, spinup=1000).exponents[0]
    model, _ = _fit(system, x0, LossSpec('jac', lam=500.0), (64, 64))

    # The small-scale oscillations of the plucked map are not resolved
    assert abs(_learned_exponent(system, model, x0) - truth) > 0.05


@pytest.mark.slow
def test_lorenz_loss_contrast():
    system = Lorenz63()
    x0 = system.default_state()
    units = (512,) * 5
    cfg = EvalConfig(le_steps=30000, le_ensemble=4, le_spinup=1000)

    contrast, ordering = [], []

    for seed in range(3):
        models, errors = {}, {}

        for name, loss in (('mse', LossSpec('mse')), ('jac', LossSpec('jac', lam=500.0)),
                           ('unrolled', LossSpec('unrolled', k=10))):
            model, report = _fit(system, x0, loss, units, skip=True, epochs=2000, seed=seed)
            models[name], errors[name] = (model, name), report.relative_error

        rows = {row.model: row for row in compare_models(system, models, 500.0, cfg.le_ensemble, cfg).rows}
        mse, jac, unrolled = rows['mse'], rows['jac'], rows['unrolled']

        contrast.append(errors['mse'] < 0.05 and errors['jac'] < 0.05 and
                        jac.LE_diff < 1.0 < 3.0 < mse.LE_diff and 2 * jac.W1 <= mse.W1)
        ordering.append(jac.LE_diff <= unrolled.LE_diff <= mse.LE_diff)

    assert any(contrast)
    assert any(ordering)
