"""Run configuration.

A run is described by a tree of dataclasses. The canonical serialized form is flat
at the top for the system (`system = "lorenz63"`, `params.sigma = 10.0`, `dt = 0.01`)
and uses one table per stage for the rest (`[data]`, `[model]`, `[loss]`, `[train]`,
`[eval]`, `[shadow]`).
"""

import hashlib
import json
import math
import os
from dataclasses import asdict, dataclass, field, fields
from typing import List, Optional

import ergolearn.utils.constants as c
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

logger = l.get_logger(__name__)

# Environment variable holding the default output directory
OUTPUT_DIR_ENV = 'ERGOLEARN_OUTPUT_DIR'


def _fail(path, message):
    e = f'{path}: {message}'

    logger.error(e)

    raise ex.ConfigError(e)


def _check(condition, path, message):
    if not condition:
        _fail(path, message)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _section(cls, raw, path):
    """Builds and validates a config section from its raw table.

    Args:
        cls (type): Dataclass of the section.
        raw (dict): Raw table (None gives the defaults).
        path (str): Field path used in error messages.

    Returns:
        The validated section.

    """

    if raw is None:
        raw = {}

    _check(isinstance(raw, dict), path, f'expected a table, got {type(raw).__name__}.')

    names = {f.name for f in fields(cls)}
    unknown = sorted(set(raw) - names)

    _check(not unknown, f'{path}.{unknown[0]}' if unknown else path, 'unknown key.')

    section = cls(**raw)
    section.validate(path)

    return section


def _strip_none(table):
    return {k: v for k, v in table.items() if v is not None}


@dataclass
class SystemConfig:
    name: str = 'lorenz63'
    params: dict = field(default_factory=dict)
    dt: Optional[float] = None
    substeps: Optional[int] = None

    def validate(self, path):
        from ergolearn.systems import SYSTEMS

        _check(self.name in SYSTEMS, path, f'unknown system `{self.name}`, expected one of {sorted(SYSTEMS)}.')
        _check(isinstance(self.params, dict), f'{path}.params', 'expected a table.')
        _check(self.dt is None or (_is_real(self.dt) and self.dt > 0), f'{path}.dt', 'should be a real > 0.')
        _check(self.substeps is None or (_is_int(self.substeps) and self.substeps >= 1),
               f'{path}.substeps', 'should be an integer >= 1.')

    def build(self):
        """Constructs the configured system.

        Returns:
            A System.

        """

        from ergolearn.systems import get_system

        return get_system(self.name, self.params, self.dt, self.substeps)


@dataclass
class DataConfig:
    n_steps: int = c.TRAIN_SIZE + c.TEST_SIZE
    spinup: int = 0
    n_train: int = c.TRAIN_SIZE
    n_test: int = c.TEST_SIZE
    x0: Optional[List[float]] = None
    with_jacobians: bool = True

    def validate(self, path):
        for name in ('n_steps', 'n_train'):
            _check(_is_int(getattr(self, name)) and getattr(self, name) >= 1, f'{path}.{name}',
                   'should be an integer >= 1.')

        for name in ('spinup', 'n_test'):
            _check(_is_int(getattr(self, name)) and getattr(self, name) >= 0, f'{path}.{name}',
                   'should be an integer >= 0.')

        _check(self.n_train + self.n_test <= self.n_steps, f'{path}.n_steps',
               f'should be >= n_train + n_test = {self.n_train + self.n_test}.')
        _check(self.x0 is None or all(_is_real(v) for v in self.x0), f'{path}.x0', 'should be a list of reals.')


@dataclass
class ModelConfig:
    kind: str = 'mlp'
    units: List[int] = field(default_factory=lambda: [512, 512, 512])
    activation: str = 'gelu'
    skip: bool = True
    seed: int = 0

    def validate(self, path):
        _check(self.kind in ('mlp', 'neural_ode', 'exact'), f'{path}.kind', 'should be `mlp`, `neural_ode` or `exact`.')
        _check(all(_is_int(u) and u >= 1 for u in self.units), f'{path}.units', 'should be integers >= 1.')
        _check(self.activation in ('gelu', 'relu'), f'{path}.activation', 'should be `gelu` or `relu`.')
        _check(isinstance(self.skip, bool), f'{path}.skip', 'should be a boolean.')
        _check(_is_int(self.seed), f'{path}.seed', 'should be an integer.')


@dataclass
class LossConfig:
    kind: str = 'jac'
    lam: Optional[float] = None
    k: int = 1
    jac_columns: Optional[int] = None

    def validate(self, path):
        _check(self.kind in ('mse', 'jac', 'unrolled'), f'{path}.kind', 'should be `mse`, `jac` or `unrolled`.')
        _check(self.lam is None or (_is_real(self.lam) and self.lam >= 0), f'{path}.lam', 'should be a finite real >= 0.')
        _check(_is_int(self.k) and self.k >= 1, f'{path}.k', 'should be an integer >= 1.')
        _check(self.jac_columns is None or (_is_int(self.jac_columns) and self.jac_columns >= 1),
               f'{path}.jac_columns', 'should be an integer >= 1.')


@dataclass
class TrainConfig:
    epochs: int = 1000
    batch_size: Optional[int] = None
    learning_rate: float = 1e-3
    weight_decay: float = 5e-4
    seed: int = 0
    lr_schedule: str = 'plateau'
    select_by: str = 'relative_error'
    eval_every: int = 10

    def validate(self, path):
        _check(_is_int(self.epochs) and self.epochs >= 0, f'{path}.epochs', 'should be an integer >= 0.')
        _check(self.batch_size is None or (_is_int(self.batch_size) and self.batch_size >= 1),
               f'{path}.batch_size', 'should be an integer >= 1 (omit it for full batches).')
        _check(_is_real(self.learning_rate) and self.learning_rate >= 0, f'{path}.learning_rate', 'should be a real >= 0.')
        _check(_is_real(self.weight_decay) and self.weight_decay >= 0, f'{path}.weight_decay', 'should be a real >= 0.')
        _check(_is_int(self.seed), f'{path}.seed', 'should be an integer.')
        _check(self.lr_schedule in ('constant', 'plateau'), f'{path}.lr_schedule', 'should be `constant` or `plateau`.')
        _check(self.select_by in ('relative_error', 'test_loss'), f'{path}.select_by',
               'should be `relative_error` or `test_loss`.')
        _check(_is_int(self.eval_every) and self.eval_every >= 1, f'{path}.eval_every', 'should be an integer >= 1.')


@dataclass
class EvalConfig:
    horizon: float = 500.0
    le_steps: int = 30000
    le_ensemble: int = 10
    le_spinup: int = 1000
    reorth_every: int = 1
    n_exponents: Optional[int] = None
    w1_method: str = 'auto'
    projections: int = c.SLICED_PROJECTIONS
    bins: int = c.HISTOGRAM_BINS
    seed: int = 0

    def validate(self, path):
        _check(_is_real(self.horizon) and self.horizon > 0, f'{path}.horizon', 'should be a real > 0.')

        for name in ('le_steps', 'le_ensemble', 'reorth_every', 'projections', 'bins'):
            _check(_is_int(getattr(self, name)) and getattr(self, name) >= 1, f'{path}.{name}',
                   'should be an integer >= 1.')

        _check(_is_int(self.le_spinup) and self.le_spinup >= 0, f'{path}.le_spinup', 'should be an integer >= 0.')
        _check(self.n_exponents is None or (_is_int(self.n_exponents) and self.n_exponents >= 1),
               f'{path}.n_exponents', 'should be an integer >= 1.')
        _check(self.w1_method in ('auto', 'exact1d', 'assignment', 'sliced'), f'{path}.w1_method',
               'should be `auto`, `exact1d`, `assignment` or `sliced`.')
        _check(_is_int(self.seed), f'{path}.seed', 'should be an integer.')


@dataclass
class ShadowConfig:
    n: int = 200
    tol: float = c.SHADOW_TOL
    max_iter: int = c.SHADOW_MAX_ITER
    threshold: Optional[float] = None
    noise: float = 0.0
    reference_steps: int = 10000
    seed: int = 0

    def validate(self, path):
        _check(_is_int(self.n) and self.n >= 2, f'{path}.n', 'should be an integer >= 2.')
        _check(_is_real(self.tol) and self.tol > 0, f'{path}.tol', 'should be a real > 0.')
        _check(_is_int(self.max_iter) and self.max_iter >= 1, f'{path}.max_iter', 'should be an integer >= 1.')
        _check(self.threshold is None or (_is_real(self.threshold) and self.threshold > 0),
               f'{path}.threshold', 'should be a real > 0.')
        _check(_is_real(self.noise) and self.noise >= 0, f'{path}.noise', 'should be a real >= 0.')
        _check(_is_int(self.reference_steps) and self.reference_steps >= 1, f'{path}.reference_steps',
               'should be an integer >= 1.')
        _check(_is_int(self.seed), f'{path}.seed', 'should be an integer.')


@dataclass
class RunConfig:
    system: SystemConfig = field(default_factory=SystemConfig)
    data: DataConfig = field(default_factory=DataConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    loss: LossConfig = field(default_factory=LossConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)
    shadow: ShadowConfig = field(default_factory=ShadowConfig)
    output_dir: Optional[str] = None
    threads: int = 1
    reproducible: bool = False

    @classmethod
    def from_dict(cls, raw):
        """Builds a validated configuration from its serialized form.

        Args:
            raw (dict): Raw configuration, e.g., a decoded TOML file.

        Returns:
            A RunConfig.

        """

        raw = dict(raw or {})
        system = raw.pop('system', 'lorenz63')

        if isinstance(system, str):
            system = {'name': system, 'params': raw.pop('params', {}),
                      'dt': raw.pop('dt', None), 'substeps': raw.pop('substeps', None)}

        sections = {
            'system': _section(SystemConfig, system, 'system'),
            'data': _section(DataConfig, raw.pop('data', None), 'data'),
            'model': _section(ModelConfig, raw.pop('model', None), 'model'),
            'loss': _section(LossConfig, raw.pop('loss', None), 'loss'),
            'train': _section(TrainConfig, raw.pop('train', None), 'train'),
            'eval': _section(EvalConfig, raw.pop('eval', None), 'eval'),
            'shadow': _section(ShadowConfig, raw.pop('shadow', None), 'shadow')
        }

        unknown = sorted(set(raw) - {'output_dir', 'threads', 'reproducible'})
        _check(not unknown, unknown[0] if unknown else '', 'unknown key.')

        config = cls(**sections, **raw)

        _check(config.output_dir is None or isinstance(config.output_dir, str), 'output_dir', 'should be a string.')
        _check(_is_int(config.threads) and config.threads >= 1, 'threads', 'should be an integer >= 1.')
        _check(isinstance(config.reproducible, bool), 'reproducible', 'should be a boolean.')

        return config

    def to_dict(self):
        """Serializes the configuration; `from_dict` inverts it.

        Returns:
            A TOML/JSON compatible dictionary.

        """

        raw = {'system': self.system.name, 'params': dict(self.system.params)}
        raw.update(_strip_none({'dt': self.system.dt, 'substeps': self.system.substeps}))

        for name in ('data', 'model', 'loss', 'train', 'eval', 'shadow'):
            raw[name] = _strip_none(asdict(getattr(self, name)))

        raw.update(_strip_none({'output_dir': self.output_dir, 'threads': self.threads,
                                'reproducible': self.reproducible}))

        return raw

    def digest(self):
        """Hashes the canonical JSON form of the configuration.

        Returns:
            The sha256 hex digest.

        """

        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))

        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @property
    def lam(self):
        """float: Jacobian-matching weight, falling back to the per-system default.

        """

        if self.loss.lam is not None:
            return float(self.loss.lam)

        return c.DEFAULT_LAMBDA.get(self.system.name, 1.0)

    def resolve_output_dir(self):
        """Gets the output directory: config, then environment, then the working directory.

        Returns:
            The output directory path.

        """

        return self.output_dir or os.environ.get(OUTPUT_DIR_ENV) or '.'


def set_path(raw, path, value):
    """Sets a dotted key of a raw configuration, creating tables on the way.

    Args:
        raw (dict): Raw configuration.
        path (str): Dotted key, e.g., `train.epochs`.
        value (any): Value to be set.

    """

    *tables, key = path.split('.')

    for table in tables:
        raw = raw.setdefault(table, {})

    raw[key] = value
