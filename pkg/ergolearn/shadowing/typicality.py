"""Typical or atypical: how the measure of a shadowing orbit compares with the reference measure.
"""

from dataclasses import dataclass

import numpy as np

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.ergodic.wasserstein import EmpiricalMeasure, resolve_method, wasserstein1

logger = l.get_logger(__name__)

# Slack of the triangle-inequality check
TRIANGLE_SLACK = 1e-9


@dataclass
class ShadowMeasureReport:
    w1_shadow_vs_reference: float
    w1_model_vs_reference: float
    w1_shadow_vs_model: float
    threshold: float
    typical: bool
    method: str

    @property
    def triangle_holds(self):
        """bool: Whether W1(reference, model) <= W1(shadow, model) + W1(reference, shadow).

        """

        if np.isnan(self.w1_model_vs_reference):
            return True

        return bool(self.w1_model_vs_reference <=
                    self.w1_shadow_vs_model + self.w1_shadow_vs_reference + TRIANGLE_SLACK)

    def to_dict(self):
        return {'w1_shadow_vs_reference': self.w1_shadow_vs_reference,
                'w1_model_vs_reference': self.w1_model_vs_reference,
                'w1_shadow_vs_model': self.w1_shadow_vs_model,
                'threshold': self.threshold, 'typical': self.typical, 'method': self.method,
                'triangle_holds': self.triangle_holds}


def typicality_threshold(truth, reference, n, factor=c.SHADOW_TYPICAL_FACTOR, spinup=1000, method='auto',
                         n_projections=c.SLICED_PROJECTIONS, seed=0):
    """Scales the distance between the reference measure and an independent reference orbit
    of the same length as the shadow, i.e., the sampling noise a typical orbit shows.

    Args:
        truth (System): Reference system.
        reference (EmpiricalMeasure): Measure of a long reference orbit.
        n (int): Number of steps of the shadowing orbit.
        factor (float): Multiplier of the baseline.
        spinup (int): Steps discarded before the baseline orbit.
        method (str): W1 method.
        n_projections (int): Directions of the sliced method.
        seed (int): Seed of the baseline initial state and of the projections.

    Returns:
        The threshold.

    """

    rng = np.random.default_rng(seed)
    baseline = truth.orbit(truth.random_state(rng), n, spinup=spinup)

    distance = wasserstein1(EmpiricalMeasure.from_orbit(baseline), reference, method, n_projections, seed)

    logger.debug('Truth-vs-truth baseline: %s.', distance)

    return factor * distance


def classify_shadow(result, reference, threshold, model_states=None, method='auto',
                    n_projections=c.SLICED_PROJECTIONS, seed=0):
    """Classifies a shadowing orbit as typical when its measure is within `threshold`
    of the reference measure.

    Args:
        result (ShadowResult): Converged refinement.
        reference (EmpiricalMeasure): Measure of a long reference orbit.
        threshold (float): Largest W1 distance of a typical shadow.
        model_states (np.array): The pseudo-orbit that was shadowed, to report the W1 triple.
        method (str): W1 method, resolved once and shared by the three distances.
        n_projections (int): Directions of the sliced method.
        seed (int): Seed of the sliced directions.

    Returns:
        A ShadowMeasureReport.

    """

    if not result.converged:
        e = 'Only converged shadows can be classified.'

        logger.error(e)

        raise ex.NoConvergence(e, result=result)

    shadow = EmpiricalMeasure(result.states)
    method = resolve_method(shadow, reference, method)

    w1_shadow = wasserstein1(shadow, reference, method, n_projections, seed)
    w1_model, w1_between = float('nan'), float('nan')

    if model_states is not None:
        model = EmpiricalMeasure(model_states)

        w1_model = wasserstein1(model, reference, method, n_projections, seed)
        w1_between = wasserstein1(shadow, model, method, n_projections, seed)

    report = ShadowMeasureReport(w1_shadow, w1_model, w1_between, float(threshold), bool(w1_shadow < threshold),
                                 method)

    if not report.triangle_holds:
        logger.warning('Triangle inequality violated: %s > %s + %s.', w1_model, w1_between, w1_shadow)

    logger.info('Shadow is %s: W1 = %s (threshold %s).', 'typical' if report.typical else 'atypical',
                w1_shadow, threshold)

    return report


def shadow_report(pseudo, result, measure=None):
    """Gathers a full audit into the `shadow_report.json` layout.

    Args:
        pseudo (PseudoOrbit): Shadowed pseudo-orbit.
        result (ShadowResult): Refinement outcome, converged or not.
        measure (ShadowMeasureReport): Classification, when available.

    Returns:
        A JSON-serializable dictionary.

    """

    report = {'defects': pseudo.to_dict()}
    report.update(result.to_dict())

    # Observed distance over the largest defect, an empirical proxy of the shadowing constant
    largest = float(np.max(pseudo.defects))
    report['distance_ratio'] = result.shadow_distance / largest if largest > 0 else None

    report['verdict'] = None
    if measure is not None:
        report['measure'] = measure.to_dict()
        report['verdict'] = 'typical' if measure.typical else 'atypical'

    return report
