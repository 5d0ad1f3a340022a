"""Side-by-side statistical comparison of learned models against the reference system.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import Orbit
from ergolearn.ergodic.lyapunov import ensemble_lyapunov
from ergolearn.ergodic.statistics import orbit_statistics
from ergolearn.ergodic.wasserstein import EmpiricalMeasure, resolve_method, wasserstein1
from ergolearn.utils import loader

logger = l.get_logger(__name__)

# Largest number of reported exponents
MAX_EXPONENTS = 15


def model_orbit(model, x0, n):
    """Iterates a surrogate from an initial state.

    Args:
        model (Surrogate): Learned map.
        x0 (np.array): Initial state.
        n (int): Number of steps; n + 1 states are stored.

    Returns:
        An Orbit of the surrogate.

    """

    states = np.empty((n + 1, model.n_dim))
    states[0] = x0

    for t in range(1, n + 1):
        states[t] = model.forward(states[t - 1])

        if not np.all(np.isfinite(states[t])):
            e = f'Model orbit blew up at iterate {t}.'

            logger.error(e)

            raise ex.NonFiniteState(e, index=t)

    return Orbit(states, x0=x0)


@dataclass
class ComparisonRow:
    model: str
    loss: str
    W1: float
    LE_diff: float
    mean_diff: float
    w1_method: str


@dataclass
class ComparisonTable:
    rows: list = field(default_factory=list)
    spectra: dict = field(default_factory=dict)
    statistics: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)

    def to_csv(self, file_name):
        """Writes `model,loss,W1,LE_diff,mean_diff,w1_method` rows.

        Args:
            file_name (str): The file name to be saved.

        """

        with open(file_name, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(['model', 'loss', 'W1', 'LE_diff', 'mean_diff', 'w1_method'])

            for row in self.rows:
                writer.writerow([row.model, row.loss, repr(row.W1), repr(row.LE_diff), repr(row.mean_diff),
                                 row.w1_method])

    def spectra_to_json(self, file_name):
        """Writes the spectra with their settings.

        Args:
            file_name (str): The file name to be saved.

        """

        payload = {name: spectrum.to_dict() for name, spectrum in self.spectra.items()}
        payload['settings'] = self.settings

        loader.save_json(file_name, payload)


def compare_models(system, models, horizon, ensemble, cfg, x0=None, threads=1):
    """Compares surrogates with the reference system along three columns: the W1 distance of
    orbit measures, the Euclidean distance of Lyapunov spectra and the distance of time averages.

    Args:
        system (System): Reference system.
        models (dict): Surrogates keyed by name, each value a (model, loss name) tuple.
        horizon (float): Orbit length in time units.
        ensemble (int): Number of initial states of the spectra.
        cfg (EvalConfig): Evaluation settings (spectrum steps, W1 method, bins and seed).
        x0 (np.array): Shared initial state of the orbits (defaults to the system's).
        threads (int): Workers of the ensemble spectra.

    Returns:
        A ComparisonTable.

    """

    n = max(1, int(round(horizon / system.time_unit)))
    x0 = system.default_state() if x0 is None else np.asarray(x0, dtype=np.float64)
    k = min(system.n_dim, cfg.n_exponents or MAX_EXPONENTS)

    logger.info('Comparing %d models over %d steps ...', len(models), n)

    truth_orbit = system.orbit(x0, n)
    truth_stats = orbit_statistics(truth_orbit, bins=cfg.bins)
    truth_measure = EmpiricalMeasure.from_orbit(truth_orbit)

    # Every spectrum starts from the same initial states
    rng = np.random.default_rng(cfg.seed)
    starts = [system.orbit(system.random_state(rng), 1, spinup=cfg.le_spinup).states[-1] for _ in range(ensemble)]

    spectra = {'truth': ensemble_lyapunov(system, ensemble, rng, cfg.le_steps, k, 0, cfg.reorth_every,
                                          system.time_unit, starts, threads)}
    statistics = {'truth': truth_stats}

    table = ComparisonTable(spectra=spectra, statistics=statistics, settings={
        'horizon': horizon, 'steps': n, 'le_steps': cfg.le_steps, 'le_ensemble': ensemble, 'le_spinup': cfg.le_spinup,
        'reorth_every': cfg.reorth_every, 'n_exponents': k, 'w1_method': cfg.w1_method, 'seed': cfg.seed})

    for name, (model, loss) in models.items():
        orbit = model_orbit(model, x0, n)
        measure = EmpiricalMeasure.from_orbit(orbit)

        statistics[name] = orbit_statistics(orbit, edges=truth_stats.edges)
        spectra[name] = ensemble_lyapunov(model, ensemble, rng, cfg.le_steps, k, 0, cfg.reorth_every,
                                          system.time_unit, starts, threads)

        method = resolve_method(truth_measure, measure, cfg.w1_method)

        table.rows.append(ComparisonRow(
            model=name,
            loss=loss,
            W1=wasserstein1(truth_measure, measure, method, cfg.projections, cfg.seed),
            LE_diff=float(np.linalg.norm(spectra['truth'].exponents - spectra[name].exponents)),
            mean_diff=float(np.linalg.norm(truth_stats.mean - statistics[name].mean)),
            w1_method=method))

        logger.info('%s: W1 = %s | LE diff = %s | Mean diff = %s.', name, table.rows[-1].W1,
                    table.rows[-1].LE_diff, table.rows[-1].mean_diff)

    return table
