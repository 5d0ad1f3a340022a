import os

import ergolearn
from ergolearn.utils import loader
from ergolearn.utils.config import RunConfig
from ergolearn.utils.manifest import MANIFEST_FILE, RunManifest


def test_run_manifest(tmp_path):
    config = RunConfig.from_dict({'system': 'tent_tilted', 'params': {'s': 0.2}})
    manifest = RunManifest('simulate', config)

    manifest.add(os.path.join(str(tmp_path), 'orbit.csv'))
    manifest.summary['n'] = 10

    path = manifest.save(str(tmp_path))
    saved = loader.load_json(path)

    assert os.path.basename(path) == MANIFEST_FILE
    assert saved['command'] == 'simulate'
    assert saved['config_hash'] == config.digest()
    assert saved['system'] == 'tent_tilted'
    assert saved['artifacts'] == ['manifest.json', 'orbit.csv']
    assert saved['summary'] == {'n': 10}
    assert saved['version'] == ergolearn.__version__
    assert saved['finished'] is not None
