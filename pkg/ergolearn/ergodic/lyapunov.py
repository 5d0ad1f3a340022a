"""Lyapunov spectra by QR re-orthonormalization of tangent frames.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import TangentFrame

logger = l.get_logger(__name__)


@dataclass
class LyapunovSpectrum:
    exponents: np.ndarray
    ensemble_std: np.ndarray
    steps: int
    ensemble_size: int

    def to_dict(self):
        return {'exponents': self.exponents.tolist(), 'ensemble_std': self.ensemble_std.tolist(),
                'steps': self.steps, 'ensemble_size': self.ensemble_size}


def as_tangent(source, jacobian_fn=None):
    """Normalizes the ways dynamics can be supplied into a function x -> (F(x), dF(x)).

    Args:
        source (System | Surrogate | callable): Anything with a `tangent` method, a tangent
            function, or a map function when `jacobian_fn` is given.
        jacobian_fn (callable): Jacobian function paired with a map function.

    Returns:
        The tangent function.

    """

    if jacobian_fn is not None:
        return lambda x: (source(x), jacobian_fn(x))

    if hasattr(source, 'tangent'):
        return source.tangent

    return source


def lyapunov_spectrum(source, x0, steps, k=None, spinup=0, reorth_every=1, time_unit=None, jacobian_fn=None):
    """Computes the k leading Lyapunov exponents along the orbit of x0.

    An orthonormal d x k frame is pushed through dF at every step and re-orthonormalized by
    QR every `reorth_every` steps; the accumulated log|diag(R)| divided by the elapsed time
    gives the exponents.

    Args:
        source (System | Surrogate | callable): Dynamics, see `as_tangent`.
        x0 (np.array): Initial state.
        steps (int): Number of averaged steps.
        k (int): Number of exponents (defaults to d).
        spinup (int): Steps discarded before averaging.
        reorth_every (int): Steps between re-orthonormalizations.
        time_unit (float): Time per step (defaults to the source's `time_unit`, else 1).
        jacobian_fn (callable): Jacobian function when `source` is a map function.

    Returns:
        A LyapunovSpectrum with descending exponents.

    """

    if steps < 1 or reorth_every < 1 or spinup < 0:
        e = f'Needs steps >= 1, reorth_every >= 1 and spinup >= 0, got {steps}, {reorth_every} and {spinup}.'

        logger.error(e)

        raise ex.ConfigError(e)

    tangent = as_tangent(source, jacobian_fn)
    time_unit = getattr(source, 'time_unit', 1.0) if time_unit is None else time_unit

    x = np.asarray(x0, dtype=np.float64)
    for _ in range(spinup):
        x = tangent(x)[0]

    frame = TangentFrame(x.shape[0], k)

    for t in range(steps):
        x, jac = tangent(x)
        frame.push(jac)

        if (t + 1) % reorth_every == 0:
            frame.reorthonormalize()

    if steps % reorth_every:
        frame.reorthonormalize()

    exponents = np.sort(frame.log_norms / (steps * time_unit))[::-1]

    return LyapunovSpectrum(exponents, np.zeros_like(exponents), steps, 1)


def ensemble_lyapunov(source, ensemble_size, rng, steps, k=None, spinup=0, reorth_every=1, time_unit=None,
                      initial_states=None, threads=1):
    """Averages Lyapunov spectra over an ensemble of initial states.

    Members run in parallel on a thread pool and are reduced in member order,
    so the result does not depend on the number of threads.

    Args:
        source (System | Surrogate): Dynamics with a `tangent` method.
        ensemble_size (int): Number of members.
        rng (np.random.Generator): Generator of the initial states.
        steps (int): Number of averaged steps per member.
        k (int): Number of exponents.
        spinup (int): Steps discarded before averaging.
        reorth_every (int): Steps between re-orthonormalizations.
        time_unit (float): Time per step.
        initial_states (np.array): Explicit initial states, otherwise drawn by `source.random_state(rng)`.
        threads (int): Number of worker threads.

    Returns:
        A LyapunovSpectrum with mean exponents and their ensemble standard deviation.

    """

    if ensemble_size < 1:
        e = f'`ensemble_size` should be >= 1, got {ensemble_size}.'

        logger.error(e)

        raise ex.ConfigError(e)

    if initial_states is None:
        initial_states = [source.random_state(rng) for _ in range(ensemble_size)]

    initial_states = list(initial_states)[:ensemble_size]

    def member(x0):
        try:
            return lyapunov_spectrum(source, x0, steps, k, spinup, reorth_every, time_unit).exponents

        except (ex.NumericalError, ex.NonSmoothPoint) as error:
            return error

    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = list(executor.map(member, initial_states))

    failures = [(i, r) for i, r in enumerate(results) if isinstance(r, Exception)]

    for i, error in failures:
        logger.warning('Ensemble member %d failed: %s', i, error)

    spectra = [r for r in results if not isinstance(r, Exception)]

    if not spectra:
        e = f'Every one of the {len(results)} ensemble members failed.'

        logger.error(e)

        raise failures[-1][1]

    spectra = np.stack(spectra)

    return LyapunovSpectrum(spectra.mean(axis=0), spectra.std(axis=0), steps, len(spectra))


def log_det_average(source, x0, steps, spinup=0, time_unit=None):
    """Time average of log|det dF| along an orbit, which equals the sum of all exponents.

    Args:
        source (System | Surrogate | callable): Dynamics, see `as_tangent`.
        x0 (np.array): Initial state.
        steps (int): Number of averaged steps.
        spinup (int): Steps discarded before averaging.
        time_unit (float): Time per step.

    Returns:
        The average log-determinant per unit time.

    """

    tangent = as_tangent(source)
    time_unit = getattr(source, 'time_unit', 1.0) if time_unit is None else time_unit

    x = np.asarray(x0, dtype=np.float64)
    for _ in range(spinup):
        x = tangent(x)[0]

    total = 0.0
    for _ in range(steps):
        x, jac = tangent(x)
        total += np.linalg.slogdet(jac)[1]

    return total / (steps * time_unit)
