"""System-related classes.
"""

from types import MappingProxyType

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core.orbit import Orbit

logger = l.get_logger(__name__)


class System:
    """A System class holds a reference dynamical system, i.e., a map F on R^d
    together with its Jacobian dF.

    Note that this class only provides basic properties and methods that are invoked
    by its childs, thus, it should not be instantiated. Instances are immutable after
    construction and can be shared across workers.

    """

    kind = None

    def __init__(self, name, n_dim, params=None):
        """Initialization method.

        Args:
            name (str): Identifier of the system.
            n_dim (int): State dimension.
            params (dict): Named real parameters.

        """

        if int(n_dim) < 1:
            e = f'`n_dim` should be >= 1, got {n_dim}.'

            logger.error(e)

            raise ex.ConfigError(e)

        self._name = name
        self._n_dim = int(n_dim)
        self._params = MappingProxyType(dict(params or {}))

    @property
    def name(self):
        """str: Identifier of the system.

        """

        return self._name

    @property
    def n_dim(self):
        """int: State dimension.

        """

        return self._n_dim

    @property
    def params(self):
        """mappingproxy: Read-only view of the named parameters.

        """

        return self._params

    @property
    def time_unit(self):
        """float: Physical time elapsed by one application of the map.

        """

        return 1.0

    def _check_state(self, x):
        """Casts a state to a float64 vector and checks its length.

        Args:
            x (np.array): A state.

        Returns:
            The state as a float64 array.

        """

        x = np.asarray(x, dtype=np.float64)

        if x.shape != (self.n_dim,):
            e = f'State should have shape ({self.n_dim},), got {x.shape}.'

            logger.error(e)

            raise ex.ShapeMismatch(e)

        return x

    def _map(self, x):
        """Evaluates the map. Each child defines its own formula.

        Args:
            x (np.array): A state.

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def _map_jacobian(self, x):
        """Evaluates dF. Each child defines its own formula.

        Args:
            x (np.array): A state.

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def step(self, x):
        """Applies the map once.

        Args:
            x (np.array): A state.

        Returns:
            F(x).

        """

        y = self._map(self._check_state(x))

        if not np.all(np.isfinite(y)):
            e = f'{self.name}: non-finite state produced from {x}.'

            logger.error(e)

            raise ex.NonFiniteState(e)

        return y

    def jacobian(self, x):
        """Evaluates the Jacobian of the map.

        Args:
            x (np.array): A state.

        Returns:
            The (d, d) matrix dF(x).

        """

        return self._map_jacobian(self._check_state(x))

    def tangent(self, x):
        """Evaluates the map and its Jacobian at once.

        Args:
            x (np.array): A state.

        Returns:
            A tuple holding F(x) and dF(x).

        """

        return self.step(x), self.jacobian(x)

    def orbit(self, x0, n, spinup=0):
        """Iterates the map from an initial state.

        Args:
            x0 (np.array): Initial state.
            n (int): Number of recorded steps; n + 1 states are stored.
            spinup (int): Number of discarded leading iterates.

        Returns:
            An Orbit.

        """

        if n < 1 or spinup < 0:
            e = f'Orbit needs n >= 1 and spinup >= 0, got n={n} and spinup={spinup}.'

            logger.error(e)

            raise ex.ConfigError(e)

        x = self._check_state(x0)
        states = np.empty((n + 1, self.n_dim))

        # Index of the iterate being produced, counted from x0
        index = 0
        try:
            for index in range(1, spinup + 1):
                x = self.step(x)

            states[0] = x

            for t in range(1, n + 1):
                index = spinup + t
                states[t] = self.step(states[t - 1])

        except ex.NonFiniteState as error:

            e = f'{self.name}: orbit blew up at iterate {index}.'

            logger.error(e)

            raise ex.NonFiniteState(e, index=index) from error

        return Orbit(states, system=self, x0=np.asarray(x0, dtype=np.float64))

    def default_state(self):
        """Gets a deterministic initial state inside the basin of attraction.

        Returns:
            An initial state.

        """

        return np.full(self.n_dim, 0.5)

    def random_state(self, rng):
        """Samples a random initial state.

        Args:
            rng (np.random.Generator): Random number generator.

        Returns:
            An initial state.

        """

        return self.default_state() + 0.1 * rng.standard_normal(self.n_dim)

    def to_dict(self):
        """Serializes the system specification.

        Returns:
            A dictionary with the system name and its parameters.

        """

        return {'system': self.name, 'params': dict(self.params)}


class DiscreteMap(System):
    """A DiscreteMap class stands for systems given by a closed-form map.

    """

    kind = 'map'


class OdeFlow(System):
    """An OdeFlow class stands for time-δt maps of an ODE, realized by
    classical four-stage Runge-Kutta steps.

    The Jacobian is the exact derivative of the RK4 update, obtained by the chain
    rule through the four stages of every substep.

    """

    kind = 'flow'

    def __init__(self, name, n_dim, params=None, dt=0.01, substeps=1):
        """Initialization method.

        Args:
            name (str): Identifier of the system.
            n_dim (int): State dimension.
            params (dict): Named real parameters.
            dt (float): Time step of the map.
            substeps (int): Number of RK4 substeps of size dt / substeps.

        """

        super(OdeFlow, self).__init__(name, n_dim, params)

        if not dt > 0 or int(substeps) < 1:
            e = f'`dt` should be > 0 and `substeps` >= 1, got {dt} and {substeps}.'

            logger.error(e)

            raise ex.ConfigError(e)

        self._dt = float(dt)
        self._substeps = int(substeps)

    @property
    def dt(self):
        """float: Time step of the map.

        """

        return self._dt

    @property
    def substeps(self):
        """int: RK4 substeps per map application.

        """

        return self._substeps

    @property
    def time_unit(self):
        """float: Physical time elapsed by one application of the map.

        """

        return self._dt

    def vector_field(self, x):
        """Evaluates the vector field v(x).

        Args:
            x (np.array): A state.

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def vector_field_jacobian(self, x):
        """Evaluates the Jacobian of the vector field.

        Args:
            x (np.array): A state.

        Raises:
            NotImplementedError

        """

        raise NotImplementedError

    def _rk4(self, x, with_jacobian=False):
        """Integrates the vector field over one time step.

        Args:
            x (np.array): A state.
            with_jacobian (bool): Whether dF should be accumulated as well.

        Returns:
            The new state and, if requested, the Jacobian of the step (otherwise None).

        """

        h = self.dt / self.substeps
        identity = np.eye(self.n_dim)
        jac = identity if with_jacobian else None

        for _ in range(self.substeps):
            x2 = x + 0.5 * h * (k1 := self.vector_field(x))
            x3 = x + 0.5 * h * (k2 := self.vector_field(x2))
            x4 = x + h * (k3 := self.vector_field(x3))
            k4 = self.vector_field(x4)

            if with_jacobian:
                # Stage derivatives with respect to the substep's initial state
                K1 = self.vector_field_jacobian(x)
                K2 = self.vector_field_jacobian(x2) @ (identity + 0.5 * h * K1)
                K3 = self.vector_field_jacobian(x3) @ (identity + 0.5 * h * K2)
                K4 = self.vector_field_jacobian(x4) @ (identity + h * K3)

                jac = (identity + h / 6 * (K1 + 2 * K2 + 2 * K3 + K4)) @ jac

            x = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

        return x, jac

    def _map(self, x):
        return self._rk4(x)[0]

    def _map_jacobian(self, x):
        return self._rk4(x, with_jacobian=True)[1]

    def tangent(self, x):
        """Evaluates the map and its Jacobian sharing the RK4 stages.

        Args:
            x (np.array): A state.

        Returns:
            A tuple holding F(x) and dF(x).

        """

        y, jac = self._rk4(self._check_state(x), with_jacobian=True)

        if not np.all(np.isfinite(y)):
            e = f'{self.name}: non-finite state produced from {x}.'

            logger.error(e)

            raise ex.NonFiniteState(e)

        return y, jac

    def to_dict(self):
        """Serializes the system specification.

        Returns:
            A dictionary with the system name, parameters, time step and substeps.

        """

        spec = super(OdeFlow, self).to_dict()
        spec.update({'dt': self.dt, 'substeps': self.substeps})

        return spec
