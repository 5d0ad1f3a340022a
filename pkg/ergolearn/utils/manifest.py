"""Run manifests: what a command consumed and produced.
"""

import datetime
import os

import ergolearn
import ergolearn.utils.logging as l
from ergolearn.utils import loader

logger = l.get_logger(__name__)

MANIFEST_FILE = 'manifest.json'


class RunManifest:
    """A RunManifest class records a command's configuration hash, seeds, specs and artifacts.

    """

    def __init__(self, command, config):
        """Initialization method.

        Args:
            command (str): Name of the command that produced the run.
            config (RunConfig): Validated run configuration.

        """

        self.command = command
        self.config = config
        self.artifacts = []
        self.summary = {}
        self.started = datetime.datetime.now(datetime.timezone.utc).isoformat()
        self.finished = None

    def add(self, path):
        """Registers an output file.

        Args:
            path (str): Path of the written artifact.

        """

        self.artifacts.append(os.path.basename(path))

    def to_dict(self):
        return {
            'command': self.command,
            'config_hash': self.config.digest(),
            'seed': self.config.train.seed,
            'system': self.config.to_dict()['system'],
            'params': dict(self.config.system.params),
            'loss': self.config.to_dict()['loss'],
            'train': self.config.to_dict()['train'],
            'config': self.config.to_dict(),
            'artifacts': sorted(set(self.artifacts)),
            'summary': self.summary,
            'version': ergolearn.__version__,
            'started': self.started,
            'finished': self.finished
        }

    def save(self, output_dir):
        """Writes `manifest.json` into the output directory.

        Args:
            output_dir (str): Output directory.

        Returns:
            The written path.

        """

        self.finished = datetime.datetime.now(datetime.timezone.utc).isoformat()

        path = os.path.join(output_dir, MANIFEST_FILE)
        self.add(path)

        loader.save_json(path, self.to_dict())

        logger.info('Manifest saved to %s.', path)

        return path
