"""Command-line interface.

Every command reads an optional TOML (or JSON) configuration, applies the flags given
on the command line on top of it and writes its artifacts, plus a `manifest.json`, into
the output directory. Exit codes are 0 on success, 2 on configuration errors and 3 on
numerical failures.
"""

import argparse
import csv
import glob
import os
import sys

import numpy as np

import ergolearn
import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.core import Orbit
from ergolearn.datasets import OrbitDataset, orbit_jacobians
from ergolearn.ergodic import EmpiricalMeasure, compare_models, save_histograms
from ergolearn.models import ExactModel, model_from_config
from ergolearn.shadowing import (PseudoOrbit, classify_shadow, measure_defects, refine_shadow, shadow_report,
                                 typicality_threshold)
from ergolearn.training import LossSpec, Trainer, build_optimizer, seed_everything
from ergolearn.utils import loader
from ergolearn.utils.checkpoint import load_checkpoint, save_checkpoint
from ergolearn.utils.config import RunConfig, set_path
from ergolearn.utils.manifest import MANIFEST_FILE, RunManifest

logger = l.get_logger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# Artifact names
ORBIT_CSV = 'orbit.csv'
ORBIT_FILE = 'orbit.ergl'
TRAIN_FILE = 'train.ergl'
TEST_FILE = 'test.ergl'
HISTORY_FILE = 'risk_history.csv'
RISK_FILE = 'risk_report.json'
COMPARISON_FILE = 'comparison.csv'
SPECTRUM_FILE = 'spectrum.json'
SHADOW_FILE = 'shadow_report.json'
SUMMARY_FILE = 'summary.csv'

# Placeholder checkpoint that stands for the reference system itself
EXACT = 'exact'

# Flags shared by every command, mapped to configuration keys
COMMON_FLAGS = {
    'output_dir': 'output_dir',
    'threads': 'threads',
    'dt': 'system.dt',
    'substeps': 'system.substeps',
    's': 'system.params.s'
}

# Flags of each command, mapped to configuration keys
COMMAND_FLAGS = {
    'simulate': {
        'n': 'data.n_steps',
        'spinup': 'data.spinup',
        'n_train': 'data.n_train',
        'n_test': 'data.n_test'
    },
    'train': {
        'model': 'model.kind',
        'units': 'model.units',
        'activation': 'model.activation',
        'loss': 'loss.kind',
        'lam': 'loss.lam',
        'k': 'loss.k',
        'jac_columns': 'loss.jac_columns',
        'epochs': 'train.epochs',
        'batch_size': 'train.batch_size',
        'lr': 'train.learning_rate',
        'weight_decay': 'train.weight_decay',
        'lr_schedule': 'train.lr_schedule',
        'select_by': 'train.select_by',
        'eval_every': 'train.eval_every',
        'seed': 'train.seed'
    },
    'evaluate': {
        'horizon': 'eval.horizon',
        'le_steps': 'eval.le_steps',
        'le_ensemble': 'eval.le_ensemble',
        'le_spinup': 'eval.le_spinup',
        'reorth_every': 'eval.reorth_every',
        'n_exponents': 'eval.n_exponents',
        'w1_method': 'eval.w1_method',
        'projections': 'eval.projections',
        'bins': 'eval.bins',
        'seed': 'eval.seed'
    },
    'shadow': {
        'n': 'shadow.n',
        'tol': 'shadow.tol',
        'max_iter': 'shadow.max_iter',
        'threshold': 'shadow.threshold',
        'noise': 'shadow.noise',
        'reference_steps': 'shadow.reference_steps',
        'seed': 'shadow.seed'
    },
    'report': {}
}


def _parse_value(text):
    """Parses a `--param` value as an integer, a real or, failing both, a string.

    """

    for cast in (int, float):
        try:
            return cast(text)

        except ValueError:
            pass

    return text


def _raw_config(args):
    """Merges the configuration file with the command-line flags.

    Args:
        args (argparse.Namespace): Parsed arguments.

    Returns:
        The raw configuration dictionary.

    """

    raw = loader.load_config(args.config) if args.config else {}

    # The flat system form is moved into its own table, so flags can be set by path
    system = raw.pop('system', 'lorenz63')
    if not isinstance(system, dict):
        system = {'name': system, 'params': raw.pop('params', {}), 'dt': raw.pop('dt', None),
                  'substeps': raw.pop('substeps', None)}

    raw['system'] = {k: v for k, v in system.items() if v is not None}

    if args.system is not None:
        raw['system']['name'] = args.system

    for pair in args.param or []:
        key, sep, value = pair.partition('=')

        if not sep or not key:
            e = f'--param: expected KEY=VALUE, got `{pair}`.'

            logger.error(e)

            raise ex.ConfigError(e)

        set_path(raw, f'system.params.{key}', _parse_value(value))

    flags = dict(COMMON_FLAGS, **COMMAND_FLAGS[args.command])
    for dest, path in flags.items():
        value = getattr(args, dest, None)

        if value is not None:
            set_path(raw, path, value)

    if getattr(args, 'seed', None) is not None and args.command == 'train':
        set_path(raw, 'model.seed', args.seed)

    if getattr(args, 'no_jacobians', False):
        set_path(raw, 'data.with_jacobians', False)

    if args.reproducible:
        raw['reproducible'] = True

    return raw


def _output_dir(config):
    output_dir = config.resolve_output_dir()
    os.makedirs(output_dir, exist_ok=True)

    return output_dir


def _initial_state(config, system):
    if config.data.x0 is not None:
        return np.asarray(config.data.x0, dtype=np.float64)

    return system.default_state()


def _load_model(config, system, checkpoint):
    """Loads a checkpoint, or wraps the reference system when it is `exact`.

    Returns:
        A tuple holding the model, its name and its loss kind.

    """

    if checkpoint == EXACT:
        return ExactModel(system), EXACT, EXACT

    model, meta = load_checkpoint(checkpoint)

    if model.n_dim != system.n_dim:
        e = f'{checkpoint}: model dimension {model.n_dim} differs from `{system.name}` dimension {system.n_dim}.'

        logger.error(e)

        raise ex.ConfigError(e)

    name = os.path.splitext(os.path.basename(checkpoint))[0]

    return model, name, meta.get('loss', {}).get('kind', 'unknown')


def cmd_simulate(config, args=None):
    """Simulates the configured system and writes its orbit and train/test datasets.

    Args:
        config (RunConfig): Run configuration.
        args (argparse.Namespace): Parsed arguments.

    Returns:
        The run manifest.

    """

    output_dir = _output_dir(config)
    manifest = RunManifest('simulate', config)

    system = config.system.build()
    orbit = system.orbit(_initial_state(config, system), config.data.n_steps, spinup=config.data.spinup)

    jacobians = orbit_jacobians(system, orbit.states) if config.data.with_jacobians else None

    path = os.path.join(output_dir, ORBIT_CSV)
    loader.save_csv(path, orbit.states, dt=getattr(system, 'dt', None))
    manifest.add(path)

    path = os.path.join(output_dir, ORBIT_FILE)
    loader.save_ergl(path, orbit.states, jacobians)
    manifest.add(path)

    n_train, n_test = config.data.n_train, config.data.n_test
    bounds = {TRAIN_FILE: (0, n_train + 1), TEST_FILE: (n_train, n_train + n_test + 1)}

    for file_name, (start, stop) in bounds.items():
        if stop - start < 2:
            continue

        path = os.path.join(output_dir, file_name)
        loader.save_ergl(path, orbit.states[start:stop], jacobians[start:stop] if jacobians is not None else None)
        manifest.add(path)

    manifest.summary = {'n_states': len(orbit), 'n_dim': system.n_dim, 'n_train': n_train, 'n_test': n_test,
                        'with_jacobians': config.data.with_jacobians}
    manifest.save(output_dir)

    return manifest


def _load_split(data_dir, file_name, shuffle, seed):
    path = os.path.join(data_dir, file_name)

    if not os.path.exists(path):
        return None, None

    states, jacobians = loader.load_ergl(path)

    return OrbitDataset(states, jacobians, shuffle, seed), Orbit(states)


def cmd_train(config, args=None):
    """Trains a surrogate on a simulated dataset and writes its checkpoint and risks.

    Args:
        config (RunConfig): Run configuration.
        args (argparse.Namespace): Parsed arguments (`data` and `checkpoint` are read).

    Returns:
        The run manifest.

    """

    output_dir = _output_dir(config)
    data_dir = getattr(args, 'data', None) or output_dir
    manifest = RunManifest('train', config)

    seed_everything(config.train.seed, config.reproducible)

    system = config.system.build()

    train, _ = _load_split(data_dir, TRAIN_FILE, True, config.train.seed)
    test, test_orbit = _load_split(data_dir, TEST_FILE, False, config.train.seed)

    if train is None:
        e = f'No training dataset in {data_dir}; run `ergolearn simulate` first.'

        logger.error(e)

        raise ex.ConfigError(e)

    if train.n_dim != system.n_dim:
        e = f'{data_dir}: dataset dimension {train.n_dim} differs from `{system.name}` dimension {system.n_dim}.'

        logger.error(e)

        raise ex.ConfigError(e)

    cfg = config.model

    if cfg.kind == EXACT:
        e = 'model.kind: the exact model has no weights to train.'

        logger.error(e)

        raise ex.ConfigError(e)

    model = model_from_config({'kind': cfg.kind, 'n_dim': system.n_dim, 'units': cfg.units,
                               'activation': cfg.activation, 'skip': cfg.skip, 'seed': cfg.seed,
                               'dt': getattr(system, 'dt', 1.0)})
    loss = LossSpec(config.loss.kind, config.lam, config.loss.k, config.loss.jac_columns)

    trainer = Trainer(model, loss)
    trainer.compile(build_optimizer(config.train.learning_rate, config.train.weight_decay))

    report = trainer.fit(train, test,
                         epochs=config.train.epochs,
                         batch_size=config.train.batch_size,
                         learning_rate=config.train.learning_rate,
                         lr_schedule=config.train.lr_schedule,
                         select_by=config.train.select_by,
                         eval_every=config.train.eval_every,
                         system=system,
                         test_orbit=test_orbit,
                         verbose=getattr(args, 'verbose', 0) or 0)

    path = getattr(args, 'checkpoint', None) or os.path.join(output_dir, f'model_{loss.kind}.ckpt')
    save_checkpoint(path, model, meta={'loss': loss.to_dict(), 'train': config.to_dict()['train'],
                                       'best_epoch': report.best_epoch, 'system': system.to_dict()})
    manifest.add(path)

    path = os.path.join(output_dir, HISTORY_FILE)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(['epoch', 'train_risk', 'test_risk', 'learning_rate'])

        for e, row in enumerate(zip(*(report.history[k] for k in ('train_risk', 'test_risk', 'learning_rate')))):
            writer.writerow([e + 1] + [repr(float(v)) for v in row])

    manifest.add(path)

    path = os.path.join(output_dir, RISK_FILE)
    loader.save_json(path, report.to_dict())
    manifest.add(path)

    manifest.summary = {'train_risk': report.train_risk, 'test_risk': report.test_risk,
                        'relative_error': report.relative_error, 'skipped_points': report.skipped_points,
                        'best_epoch': report.best_epoch}
    manifest.save(output_dir)

    return manifest


def cmd_evaluate(config, args=None):
    """Compares checkpoints with the reference system and writes the comparison table,
    the Lyapunov spectra and the per-coordinate histograms.

    Args:
        config (RunConfig): Run configuration.
        args (argparse.Namespace): Parsed arguments (`checkpoint` is read).

    Returns:
        The run manifest.

    """

    output_dir = _output_dir(config)
    manifest = RunManifest('evaluate', config)

    seed_everything(config.eval.seed, config.reproducible)

    system = config.system.build()
    checkpoints = getattr(args, 'checkpoint', None) or [EXACT]

    models = {}
    for checkpoint in checkpoints:
        model, name, loss = _load_model(config, system, checkpoint)
        models[name] = (model, loss)

    table = compare_models(system, models, config.eval.horizon, config.eval.le_ensemble, config.eval,
                           x0=_initial_state(config, system), threads=config.threads)

    path = os.path.join(output_dir, COMPARISON_FILE)
    table.to_csv(path)
    manifest.add(path)

    path = os.path.join(output_dir, SPECTRUM_FILE)
    table.spectra_to_json(path)
    manifest.add(path)

    truth = table.statistics['truth']
    for i, name in enumerate(models):
        for path in save_histograms(output_dir, truth, table.statistics[name], '' if i == 0 else f'{name}_'):
            manifest.add(path)

    manifest.summary = {row.model: {'W1': row.W1, 'LE_diff': row.LE_diff, 'mean_diff': row.mean_diff,
                                    'w1_method': row.w1_method} for row in table.rows}
    manifest.save(output_dir)

    return manifest


def cmd_shadow(config, args=None):
    """Audits a checkpoint by shadowing: measures its defects, refines its orbit into a
    true orbit and classifies the shadow against a long reference orbit.

    With `shadow.noise` > 0, the pseudo-orbit is a reference orbit with uniform noise
    of that amplitude instead.

    Args:
        config (RunConfig): Run configuration.
        args (argparse.Namespace): Parsed arguments (`checkpoint` is read).

    Returns:
        The run manifest.

    """

    output_dir = _output_dir(config)
    manifest = RunManifest('shadow', config)
    cfg = config.shadow

    system = config.system.build()
    x0 = _initial_state(config, system)

    if cfg.noise > 0:
        rng = np.random.default_rng(cfg.seed)
        states = system.orbit(x0, cfg.n).states

        pseudo = PseudoOrbit.from_states(system, states + rng.uniform(-cfg.noise, cfg.noise, states.shape))
    else:
        model, _, _ = _load_model(config, system, getattr(args, 'checkpoint', None) or EXACT)
        pseudo = measure_defects(system, model, x0, cfg.n)

    path = os.path.join(output_dir, SHADOW_FILE)

    try:
        result = refine_shadow(system, pseudo, cfg.tol, cfg.max_iter)

    except ex.NoConvergence as error:
        if error.result is not None:
            loader.save_json(path, shadow_report(pseudo, error.result))
            manifest.add(path)
            manifest.summary = {'converged': False, 'residual': error.result.residual}
            manifest.save(output_dir)

        raise

    rng = np.random.default_rng(cfg.seed)
    reference_orbit = system.orbit(system.random_state(rng), cfg.reference_steps, spinup=config.eval.le_spinup)
    reference = EmpiricalMeasure.from_orbit(reference_orbit)

    threshold = cfg.threshold
    if threshold is None:
        threshold = typicality_threshold(system, reference, cfg.n, spinup=config.eval.le_spinup,
                                         method=config.eval.w1_method, n_projections=config.eval.projections,
                                         seed=cfg.seed + 1)

    measure = classify_shadow(result, reference, threshold, pseudo.states, config.eval.w1_method,
                              config.eval.projections, cfg.seed)

    report = shadow_report(pseudo, result, measure)
    loader.save_json(path, report)
    manifest.add(path)

    manifest.summary = {'converged': True, 'shadow_distance': result.shadow_distance, 'residual': result.residual,
                        'iterations': result.iterations, 'verdict': report['verdict']}
    manifest.save(output_dir)

    return manifest


def _manifest_paths(entries):
    paths = []

    for entry in entries:
        if os.path.isdir(entry):
            paths.extend(sorted(glob.glob(os.path.join(entry, '**', MANIFEST_FILE), recursive=True)))
        else:
            paths.append(entry)

    return paths


def _flatten(prefix, value, row):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f'{prefix}.{k}' if prefix else k, v, row)
    else:
        row[prefix] = value


def cmd_report(entries, output=None):
    """Merges run manifests into one `summary.csv`, one row per manifest.

    Args:
        entries (list): Manifest files, or directories searched recursively for them.
        output (str): Output file (defaults to `summary.csv` in the working directory).

    Returns:
        The written rows.

    """

    paths = _manifest_paths(entries)

    if not paths:
        e = f'No {MANIFEST_FILE} found in {entries}.'

        logger.error(e)

        raise ex.ConfigError(e)

    rows = []
    for path in paths:
        manifest = loader.load_json(path)

        row = {'manifest': path, 'command': manifest.get('command'), 'config_hash': manifest.get('config_hash'),
               'system': manifest.get('system'), 'loss': (manifest.get('loss') or {}).get('kind'),
               'seed': manifest.get('seed'), 'version': manifest.get('version')}
        _flatten('', manifest.get('summary') or {}, row)

        rows.append(row)

    columns = list(dict.fromkeys(k for row in rows for k in row))

    output = output or SUMMARY_FILE
    with open(output, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)

    logger.info('Merged %d manifests into %s.', len(rows), output)

    return rows


def get_parser():
    """Builds the argument parser.

    Returns:
        An argparse.ArgumentParser.

    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='TOML or JSON run configuration')
    common.add_argument('--output-dir', dest='output_dir', help='Output directory')
    common.add_argument('--threads', type=int, help='Largest number of worker threads')
    common.add_argument('--reproducible', action='store_true', help='Seed everything and force deterministic ops')
    common.add_argument('--system', help='Reference system')
    common.add_argument('--dt', type=float, help='Time step of flows')
    common.add_argument('--substeps', type=int, help='RK4 substeps per time step')
    common.add_argument('--s', type=float, help='Shape parameter of tent and Baker maps')
    common.add_argument('--param', action='append', metavar='KEY=VALUE', help='System parameter')

    parser = argparse.ArgumentParser(prog='ergolearn', description='Learning chaotic dynamics and auditing their '
                                                                   'statistical accuracy.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {ergolearn.__version__}')

    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('simulate', parents=[common], help='Simulate a system and write datasets')
    p.add_argument('--n', type=int, help='Number of steps')
    p.add_argument('--spinup', type=int, help='Discarded initial steps')
    p.add_argument('--n-train', dest='n_train', type=int, help='Training pairs')
    p.add_argument('--n-test', dest='n_test', type=int, help='Test pairs')
    p.add_argument('--no-jacobians', dest='no_jacobians', action='store_true', help='Do not store Jacobians')

    p = commands.add_parser('train', parents=[common], help='Train a surrogate')
    p.add_argument('--data', help='Directory holding train.ergl and test.ergl')
    p.add_argument('--checkpoint', help='Output checkpoint (.ckpt or .json)')
    p.add_argument('--model', choices=['mlp', 'neural_ode'])
    p.add_argument('--units', type=int, nargs='+')
    p.add_argument('--activation', choices=['gelu', 'relu'])
    p.add_argument('--loss', choices=['mse', 'jac', 'unrolled'])
    p.add_argument('--lambda', dest='lam', type=float, help='Jacobian-matching weight')
    p.add_argument('--k', type=int, help='Unrolled steps')
    p.add_argument('--jac-columns', dest='jac_columns', type=int, help='Subsampled Jacobian columns')
    p.add_argument('--epochs', type=int)
    p.add_argument('--batch-size', dest='batch_size', type=int)
    p.add_argument('--lr', type=float, help='Initial learning rate')
    p.add_argument('--weight-decay', dest='weight_decay', type=float)
    p.add_argument('--lr-schedule', dest='lr_schedule', choices=['constant', 'plateau'])
    p.add_argument('--select-by', dest='select_by', choices=['relative_error', 'test_loss'])
    p.add_argument('--eval-every', dest='eval_every', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--verbose', type=int, default=0, help='Progress bar verbosity')

    p = commands.add_parser('evaluate', parents=[common], help='Compare checkpoints with the reference system')
    p.add_argument('--checkpoint', action='append', help=f'Checkpoint to evaluate (`{EXACT}` for the system itself)')
    p.add_argument('--horizon', type=float, help='Orbit length in time units')
    p.add_argument('--le-steps', dest='le_steps', type=int)
    p.add_argument('--le-ensemble', dest='le_ensemble', type=int)
    p.add_argument('--le-spinup', dest='le_spinup', type=int)
    p.add_argument('--reorth-every', dest='reorth_every', type=int)
    p.add_argument('--n-exponents', dest='n_exponents', type=int)
    p.add_argument('--w1-method', dest='w1_method', choices=['auto', 'exact1d', 'assignment', 'sliced'])
    p.add_argument('--projections', type=int)
    p.add_argument('--bins', type=int)
    p.add_argument('--seed', type=int)

    p = commands.add_parser('shadow', parents=[common], help='Shadow a checkpoint orbit')
    p.add_argument('--checkpoint', help=f'Checkpoint to audit (`{EXACT}` for the system itself)')
    p.add_argument('--n', type=int, help='Number of steps')
    p.add_argument('--tol', type=float)
    p.add_argument('--max-iter', dest='max_iter', type=int)
    p.add_argument('--threshold', type=float, help='Largest W1 of a typical shadow')
    p.add_argument('--noise', type=float, help='Shadow a noisy reference orbit instead')
    p.add_argument('--reference-steps', dest='reference_steps', type=int)
    p.add_argument('--seed', type=int)

    p = commands.add_parser('report', help='Merge manifests into a summary table')
    p.add_argument('manifests', nargs='+', help='Manifest files or directories')
    p.add_argument('--output', help=f'Summary file (defaults to {SUMMARY_FILE})')

    return parser


COMMANDS = {
    'simulate': cmd_simulate,
    'train': cmd_train,
    'evaluate': cmd_evaluate,
    'shadow': cmd_shadow
}


def main(argv=None):
    """Runs the command line.

    Args:
        argv (list): Arguments (defaults to `sys.argv[1:]`).

    Returns:
        The exit code.

    """

    args = get_parser().parse_args(argv)

    try:
        if args.command == 'report':
            cmd_report(args.manifests, args.output)

            return EXIT_OK

        config = RunConfig.from_dict(_raw_config(args))

        COMMANDS[args.command](config, args)

    except ex.NumericalError as error:
        logger.error('%s failed: %s', args.command, error)

        return EXIT_NUMERICAL

    except (ex.Error, FileNotFoundError) as error:
        logger.error('%s failed: %s', args.command, error)

        return EXIT_CONFIG

    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
