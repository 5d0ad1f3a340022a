"""Surrogate models and a factory to rebuild them from their configuration.
"""

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.models.exact import ExactModel
from ergolearn.models.mlp import MLP
from ergolearn.models.neural_ode import NeuralODE

logger = l.get_logger(__name__)


def model_from_config(config):
    """Builds a surrogate from an architecture dictionary, as returned by `get_config`.

    Args:
        config (dict): Architecture dictionary with a `kind` entry.

    Returns:
        The built surrogate.

    """

    kind = config.get('kind')

    if kind == 'mlp':
        return MLP(config['n_dim'], config['units'], config['activation'], config['skip'], config['seed'])

    if kind == 'neural_ode':
        return NeuralODE(config['n_dim'], config['dt'], config['units'], config['activation'], config['skip'],
                         config['seed'])

    if kind == 'exact':
        from ergolearn.systems import get_system

        spec = dict(config['system'])
        system = get_system(spec.pop('system'), spec.pop('params'), spec.get('dt'), spec.get('substeps'))

        return ExactModel(system, config.get('bias'))

    e = f'model.kind: unknown surrogate `{kind}`.'

    logger.error(e)

    raise ex.ConfigError(e)
