"""Training loop of the surrogates.
"""

import math
from dataclasses import dataclass, field

import tensorflow as tf
from tensorflow.keras.utils import Progbar

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.training.metrics import empirical_risk, relative_error

logger = l.get_logger(__name__)


def seed_everything(seed, deterministic=False):
    """Seeds Python, NumPy and TensorFlow at once.

    Args:
        seed (int): Seed value.
        deterministic (bool): Whether TensorFlow ops should be forced to be deterministic.

    """

    tf.keras.utils.set_random_seed(seed)

    if deterministic:
        tf.config.experimental.enable_op_determinism()


def build_optimizer(learning_rate=1e-3, weight_decay=5e-4):
    """Creates an AdamW optimizer (Adam with decoupled weight decay).

    The optimizer is built under a float64 `floatx`, so its learning rate is a float64
    variable and the decoupled decay of float64 weights is not rounded to float32.

    Args:
        learning_rate (float): Initial learning rate.
        weight_decay (float): Decoupled weight decay.

    Returns:
        A tf.keras.optimizers.AdamW instance.

    """

    floatx = tf.keras.backend.floatx()
    tf.keras.backend.set_floatx('float64')

    try:
        return tf.keras.optimizers.AdamW(learning_rate=learning_rate, weight_decay=weight_decay)
    finally:
        tf.keras.backend.set_floatx(floatx)


@dataclass
class RiskReport:
    train_risk: float
    test_risk: float
    relative_error: float
    best_epoch: int
    history: dict = field(default_factory=dict)

    # Test points left out of the relative error for a near-zero true velocity
    skipped_points: int = 0

    def to_dict(self):
        return {'train_risk': self.train_risk, 'test_risk': self.test_risk, 'relative_error': self.relative_error,
                'skipped_points': self.skipped_points, 'best_epoch': self.best_epoch, 'history': self.history}


class Trainer:
    """A Trainer class is responsible for fitting a surrogate to a dataset under
    one of the training losses, tracking train and test risks along the epochs.

    """

    def __init__(self, model, loss):
        """Initialization method.

        Args:
            model (Surrogate): Surrogate to be trained.
            loss (LossSpec): Training loss.

        """

        self.model = model
        self.loss = loss

        # Defining the history
        self.history = {}

    @property
    def history(self):
        """dict: History dictionary.

        """

        return self._history

    @history.setter
    def history(self, history):
        self._history = history

    def compile(self, optimizer):
        """Main building method.

        Args:
            optimizer (tf.keras.optimizers): An optimizer instance.

        """

        self.optimizer = optimizer

        # Running mean of the per-batch risks within an epoch
        self.train_risk = tf.keras.metrics.Mean(name='train_risk', dtype='float64')

        # Storing risks as history keys
        self.history['train_risk'] = []
        self.history['test_risk'] = []
        self.history['learning_rate'] = []

    @tf.function(reduce_retracing=True)
    def step(self, batch):
        """Performs a single batch optimization step.

        Args:
            batch (dict): A batch of tensors.

        """

        with tf.GradientTape() as tape:
            risk = self.loss(self.model, batch, subsample=True)

        gradients = tape.gradient(risk, self.model.trainable_variables)

        self.optimizer.apply_gradients(zip(gradients, self.model.trainable_variables))

        self.train_risk.update_state(risk, sample_weight=tf.cast(tf.shape(batch['x'])[0], tf.float64))

    def _set_learning_rate(self, learning_rate):
        self.optimizer.learning_rate = learning_rate

    def _monitor(self, select_by, test, system, test_orbit):
        """Evaluates the model-selection metric.

        Returns:
            The metric value (lower is better) or None when it cannot be evaluated.

        """

        if select_by == 'relative_error' and system is not None and test_orbit is not None:
            return relative_error(self.model, system, test_orbit)

        if test is not None:
            return empirical_risk(self.model, test, self.loss)

        return None

    def fit(self, train, test=None, epochs=100, batch_size=None, learning_rate=1e-3, lr_schedule='plateau',
            select_by='relative_error', eval_every=10, system=None, test_orbit=None, verbose=0):
        """Trains the model.

        Args:
            train (OrbitDataset): Training samples.
            test (OrbitDataset): Test samples.
            epochs (int): The maximum number of training epochs.
            batch_size (int): Size of batches (None uses the whole dataset at once).
            learning_rate (float): Initial learning rate.
            lr_schedule (str): `constant` or `plateau` (halves the rate after a stall).
            select_by (str): Metric of the kept weights, `relative_error` or `test_loss`.
            eval_every (int): Epochs between evaluations of the selection metric.
            system (System): Reference system, needed by `relative_error` selection.
            test_orbit (Orbit): Test orbit, needed by `relative_error` selection.
            verbose (int): Progress bar verbosity.

        Returns:
            A RiskReport of the kept weights.

        """

        if self.loss.requires_jacobians:
            train.require_jacobians()

            if test is not None:
                test.require_jacobians()

        logger.info('Fitting model ...')

        batches = train.build(batch_size, self.loss.window)
        n_batches = int(batches.cardinality().numpy())

        lr = float(learning_rate)
        self._set_learning_rate(lr)

        best_metric, best_epoch, best_weights = math.inf, 0, self.model.get_weights()
        plateau_best, stall = math.inf, 0

        for e in range(epochs):
            logger.to_file('Epoch %d/%d', e + 1, epochs)

            # Resetting states to further append risks
            self.train_risk.reset_state()

            # Defining a customized progress bar
            b = Progbar(n_batches, stateful_metrics=['risk'], verbose=verbose)

            for batch in batches:
                # Performs the optimization step
                self.step(batch)

                b.add(1, values=[('risk', self.train_risk.result())])

            train_risk = float(self.train_risk.result().numpy())

            if not math.isfinite(train_risk):
                error = f'Training risk is not finite at epoch {e + 1}.'

                logger.error(error)

                raise ex.NonFiniteLoss(error, epoch=e + 1)

            test_risk = empirical_risk(self.model, test, self.loss) if test is not None else float('nan')

            # Dumps the risks to history
            self.history['train_risk'].append(train_risk)
            self.history['test_risk'].append(test_risk)
            self.history['learning_rate'].append(lr)

            logger.to_file('Train risk: %s | Test risk: %s | Learning rate: %s', train_risk, test_risk, lr)

            if lr_schedule == 'plateau':
                if train_risk < plateau_best:
                    plateau_best, stall = train_risk, 0
                else:
                    stall += 1

                if stall >= c.PLATEAU_PATIENCE and lr > c.PLATEAU_MIN_LR:
                    lr = max(lr * c.PLATEAU_FACTOR, c.PLATEAU_MIN_LR)
                    stall = 0

                    self._set_learning_rate(lr)

                    logger.info('Learning rate reduced to %s at epoch %d.', lr, e + 1)

            if (e + 1) % eval_every == 0 or e + 1 == epochs:
                metric = self._monitor(select_by, test, system, test_orbit)

                if metric is not None and metric < best_metric:
                    best_metric, best_epoch, best_weights = metric, e + 1, self.model.get_weights()

        if epochs > 0 and best_epoch != epochs and math.isfinite(best_metric):
            logger.info('Restoring weights of epoch %d.', best_epoch)

            self.model.set_weights(best_weights)

        rel_error, skipped = float('nan'), 0
        if system is not None and test_orbit is not None:
            rel_error, skipped = relative_error(self.model, system, test_orbit, with_skipped=True)

        report = RiskReport(
            train_risk=empirical_risk(self.model, train, self.loss),
            test_risk=empirical_risk(self.model, test, self.loss) if test is not None else float('nan'),
            relative_error=rel_error,
            skipped_points=skipped,
            best_epoch=best_epoch if epochs > 0 else 0,
            history={k: list(v) for k, v in self.history.items()})

        logger.info('Model fitted.')

        return report
