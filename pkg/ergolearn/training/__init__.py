"""Losses, metrics and the training loop.
"""

from ergolearn.training.losses import LossSpec, loss_jac, loss_mse, loss_unrolled
from ergolearn.training.metrics import empirical_risk, relative_error
from ergolearn.training.trainer import RiskReport, Trainer, build_optimizer, seed_everything
