"""Modified Kuramoto-Sivashinsky equation on [0, L], discretized by second-order
central differences.
"""

import numpy as np
from scipy import sparse

import ergolearn.utils.logging as l
from ergolearn.core import OdeFlow

logger = l.get_logger(__name__)


def ks_rhs(u, c=0.4, dx=1.0):
    """Evaluates -(u + c) u_x - u_xx - u_xxxx at the interior nodes.

    Ghost nodes enforce u(0) = u(L) = 0 and u_x(0) = u_x(L) = 0, i.e., the
    padded vector reads [u_1, 0, u_1, ..., u_N, 0, u_N].

    Args:
        u (np.array): Values at the N interior nodes.
        c (float): Advection shift.
        dx (float): Grid spacing.

    Returns:
        The right-hand side at the interior nodes.

    """

    u = np.asarray(u, dtype=np.float64)
    p = np.concatenate(([u[0], 0.0], u, [0.0, u[-1]]))

    u_x = (p[3:-1] - p[1:-3]) / (2 * dx)
    u_xx = (p[3:-1] - 2 * p[2:-2] + p[1:-3]) / dx ** 2
    u_xxxx = (p[4:] - 4 * p[3:-1] + 6 * p[2:-2] - 4 * p[1:-3] + p[:-4]) / dx ** 4

    return -(u + c) * u_x - u_xx - u_xxxx


def ks_stencils(n_nodes, dx):
    """Builds the first, second and fourth derivative operators on the interior nodes.

    Args:
        n_nodes (int): Number of interior nodes.
        dx (float): Grid spacing.

    Returns:
        The sparse matrices D1, D2 and D4.

    """

    e = np.ones(n_nodes)

    # Dirichlet rows are plain truncations of the central stencils
    D1 = sparse.diags([-e[1:], e[1:]], [-1, 1], format='csr') / (2 * dx)
    D2 = sparse.diags([e[1:], -2 * e, e[1:]], [-1, 0, 1], format='csr') / dx ** 2
    D4 = sparse.diags([e[2:], -4 * e[1:], 6 * e, -4 * e[1:], e[2:]], [-2, -1, 0, 1, 2], format='lil')

    # Neumann ghosts mirror the first interior value
    D4[0, 0] += 1
    D4[-1, -1] += 1

    return D1, D2, D4.tocsr() / dx ** 4


class KuramotoSivashinsky(OdeFlow):
    """A KuramotoSivashinsky class implements the time-δt map of the discretized
    modified KS equation.

    The interior grid holds `n_nodes` points with spacing L / (n_nodes + 1).

    """

    def __init__(self, c=0.4, L=128.0, n_nodes=127, dt=0.25, substeps=2):
        """Initialization method.

        Args:
            c (float): Advection shift.
            L (float): Domain length.
            n_nodes (int): Number of interior nodes.
            dt (float): Time step.
            substeps (int): RK4 substeps per time step.

        """

        logger.info('Overriding class: OdeFlow -> KuramotoSivashinsky.')

        super(KuramotoSivashinsky, self).__init__('ks', int(n_nodes),
                                                  {'c': float(c), 'L': float(L), 'n_nodes': int(n_nodes)},
                                                  dt, substeps)

        self.dx = float(L) / (int(n_nodes) + 1)
        self.grid = self.dx * np.arange(1, int(n_nodes) + 1)
        self.D1, self.D2, self.D4 = ks_stencils(int(n_nodes), self.dx)

        # Linear part of the right-hand side
        self._linear = (self.D2 + self.D4).tocsr()

        logger.debug('c: %s | L: %s | Nodes: %d | dx: %s | dt: %s.', c, L, n_nodes, self.dx, self.dt)
        logger.info('Class overrided.')

    def vector_field(self, x):
        return -(x + self.params['c']) * (self.D1 @ x) - self._linear @ x

    def vector_field_jacobian(self, x):
        jac = -(sparse.diags(self.D1 @ x) + sparse.diags(x + self.params['c']) @ self.D1) - self._linear

        return jac.toarray()

    def default_state(self):
        """Gets the Gaussian bump exp(-(x - L/2)^2) scaled to a maximum of 0.1.

        Returns:
            The initial profile at the interior nodes.

        """

        bump = np.exp(-(self.grid - self.params['L'] / 2) ** 2)

        return 0.1 * bump / bump.max()

    def random_state(self, rng):
        return self.default_state() + 0.01 * rng.standard_normal(self.n_dim)
