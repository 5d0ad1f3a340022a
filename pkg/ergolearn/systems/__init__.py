"""Reference dynamical systems and a registry to build them by name.
"""

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.systems.baker import BakerMap
from ergolearn.systems.hyperchaos import Hyperchaos
from ergolearn.systems.kuramoto_sivashinsky import KuramotoSivashinsky, ks_rhs
from ergolearn.systems.linear import LinearFlow, LinearMap
from ergolearn.systems.lorenz import Lorenz63
from ergolearn.systems.rossler import Rossler
from ergolearn.systems.tent import PinchedTentMap, PluckedTentMap, TiltedTentMap

logger = l.get_logger(__name__)

SYSTEMS = {
    'tent_tilted': TiltedTentMap,
    'tent_pinched': PinchedTentMap,
    'tent_plucked': PluckedTentMap,
    'baker': BakerMap,
    'lorenz63': Lorenz63,
    'rossler': Rossler,
    'hyperchaos': Hyperchaos,
    'ks': KuramotoSivashinsky,
    'linear_map': LinearMap,
    'linear_flow': LinearFlow
}


def get_system(name, params=None, dt=None, substeps=None):
    """Builds a system from its registry name.

    Args:
        name (str): Registry name, e.g., `lorenz63`.
        params (dict): Named parameters forwarded to the constructor.
        dt (float): Time step (flows only).
        substeps (int): RK4 substeps (flows only).

    Returns:
        The constructed System.

    """

    if name not in SYSTEMS:
        e = f'system: unknown system `{name}`, expected one of {sorted(SYSTEMS)}.'

        logger.error(e)

        raise ex.ConfigError(e)

    kwargs = dict(params or {})

    if dt is not None:
        kwargs['dt'] = dt

    if substeps is not None:
        kwargs['substeps'] = substeps

    try:
        return SYSTEMS[name](**kwargs)

    except TypeError as error:
        e = f'system.params: invalid parameters for `{name}`: {error}.'

        logger.error(e)

        raise ex.ConfigError(e) from error
