"""Checkpoint saving and loading.

A `.ckpt` file holds an 8-byte little-endian header length, a UTF-8 JSON header and
a little-endian float64 blob with every weight in `model.weights` order (for each
dense layer, its (in, out) kernel in row-major order followed by its bias). A `.json`
checkpoint holds the same header with the weights inlined as nested lists.
"""

import json
import struct

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l
from ergolearn.models import model_from_config

logger = l.get_logger(__name__)

FORMAT = 'ergolearn-checkpoint'
VERSION = 1


def _header(model, meta):
    return {
        'format': FORMAT,
        'version': VERSION,
        'architecture': model.get_config(),
        'layout': [{'name': w.name, 'shape': list(w.shape)} for w in model.weights],
        'meta': dict(meta or {})
    }


def save_checkpoint(file_name, model, meta=None):
    """Saves a surrogate, choosing the layout by extension (`.json` or binary).

    Args:
        file_name (str): The file name to be saved.
        model (Surrogate): Surrogate to be saved.
        meta (dict): Additional header entries, e.g., seed, loss spec, training step and schedule.

    """

    logger.debug('Saving %s ...', file_name)

    header = _header(model, meta)
    weights = [np.asarray(w.numpy(), dtype=np.float64) for w in model.weights]

    if str(file_name).endswith('.json'):
        header['values'] = [w.tolist() for w in weights]

        with open(file_name, 'w') as f:
            json.dump(header, f, indent=2, sort_keys=True)

        return

    encoded = json.dumps(header, sort_keys=True).encode('utf-8')
    blob = b''.join(np.ascontiguousarray(w, dtype='<f8').tobytes() for w in weights)

    with open(file_name, 'wb') as f:
        f.write(struct.pack('<Q', len(encoded)))
        f.write(encoded)
        f.write(blob)


def _read(file_name):
    try:
        if str(file_name).endswith('.json'):
            with open(file_name, 'r') as f:
                header = json.load(f)

            return header, [np.asarray(v, dtype=np.float64) for v in header.pop('values')]

        with open(file_name, 'rb') as f:
            raw = f.read()

    except FileNotFoundError:
        e = f'File not found: {file_name}.'

        logger.error(e)

        raise

    (size,) = struct.unpack_from('<Q', raw)
    header = json.loads(raw[8:8 + size].decode('utf-8'))
    blob = np.frombuffer(raw, dtype='<f8', offset=8 + size)

    weights, offset = [], 0
    for entry in header['layout']:
        count = int(np.prod(entry['shape'], dtype=np.int64))
        weights.append(blob[offset:offset + count].reshape(entry['shape']).astype(np.float64))
        offset += count

    if offset != blob.size:
        e = f'{file_name}: blob holds {blob.size} values, layout expects {offset}.'

        logger.error(e)

        raise ex.ConfigError(e)

    return header, weights


def load_checkpoint(file_name):
    """Loads a surrogate saved by `save_checkpoint`.

    Args:
        file_name (str): The file name to be loaded.

    Returns:
        A tuple holding the rebuilt surrogate and the header metadata.

    """

    logger.debug('Loading %s ...', file_name)

    header, weights = _read(file_name)

    if header.get('format') != FORMAT or header.get('version') != VERSION:
        e = f'{file_name}: not an {FORMAT} v{VERSION} file.'

        logger.error(e)

        raise ex.ConfigError(e)

    model = model_from_config(header['architecture'])

    if weights:
        model.set_weights(weights)

    return model, header['meta']
