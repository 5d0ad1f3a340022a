"""A core package, containing all the basic class and functions that serves as
    the foundation of ergolearn common modules.
"""

from ergolearn.core.dataset import Dataset
from ergolearn.core.model import Surrogate
from ergolearn.core.orbit import Orbit, TangentFrame
from ergolearn.core.system import DiscreteMap, OdeFlow, System
