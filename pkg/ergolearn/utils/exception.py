"""Exceptions raised across ergolearn.

Raising sites follow one pattern: build the message, log it and raise,
so every failure also lands in the log file.
"""


class Error(RuntimeError):
    """Base class of every ergolearn exception.

    """


class ConfigError(Error):
    """An invalid configuration value; the message starts with its field path.

    """


class ShapeMismatch(Error, ValueError):
    """Array shapes that do not chain.

    """


class DimensionMismatch(Error, ValueError):
    """Point clouds living in spaces of different dimension.

    """


class UnequalCounts(Error):
    """An exact assignment requested between clouds of different sizes.

    """


class MissingJacobians(Error):
    """A Jacobian-aware loss requested on a dataset stored without Jacobians.

    """


class NonSmoothPoint(Error):
    """A state lying on a breakpoint of a piecewise map, where dF is undefined.

    """


class NumericalError(Error):
    """Base class of numerical failures (exit code 3 in the command line).

    """


class NonFiniteState(NumericalError):
    """A NaN or Inf produced while iterating a map.

    """

    def __init__(self, msg, index=None):
        super(NonFiniteState, self).__init__(msg)

        # Iterate at which the state stopped being finite
        self.index = index


class NonFiniteLoss(NumericalError):
    """A diverged loss during training.

    """

    def __init__(self, msg, epoch=None):
        super(NonFiniteLoss, self).__init__(msg)

        self.epoch = epoch


class DegenerateFrame(NumericalError):
    """A tangent frame whose QR diagonal underflowed.

    """


class DivisionNearZero(NumericalError):
    """Every point of a relative error evaluation had a vanishing reference velocity.

    """


class SingularLinearization(NumericalError):
    """A shadowing Newton system that could not be factorized.

    """


class NoConvergence(NumericalError):
    """A shadowing refinement that exhausted its iterations.

    """

    def __init__(self, msg, result=None):
        super(NoConvergence, self).__init__(msg)

        # Best iterate found before giving up
        self.result = result
