"""Data-loading and data-saving utilities.
"""

import json
import struct
import sys

import numpy as np

import ergolearn.utils.exception as ex
import ergolearn.utils.logging as l

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = l.get_logger(__name__)

# Magic bytes, version, dimension and number of states
ERGL_HEADER = struct.Struct('<4sHIQ')
ERGL_MAGIC = b'ERGL'
ERGL_VERSION = 1


def _open(file_name, mode):
    """Opens a file, logging a missing path before raising.

    Args:
        file_name (str): The file name to be opened.
        mode (str): Opening mode.

    Returns:
        The opened file object.

    """

    try:
        return open(file_name, mode)

    except FileNotFoundError:
        e = f'File not found: {file_name}.'

        logger.error(e)

        raise


def save_csv(file_name, states, dt=None):
    """Saves an orbit as a .csv file with header `t,x0,...,x{d-1}`.

    Args:
        file_name (str): The file name to be saved.
        states (np.array): States of shape (n, d).
        dt (float): Time step of the orbit (None stores the iterate index).

    """

    logger.debug('Saving %s ...', file_name)

    states = np.asarray(states, dtype=np.float64)
    t = np.arange(states.shape[0], dtype=np.float64) * (1.0 if dt is None else dt)

    header = ','.join(['t'] + [f'x{i}' for i in range(states.shape[1])])

    np.savetxt(file_name, np.column_stack((t, states)), fmt='%.17g', delimiter=',', header=header, comments='')


def load_csv(file_name):
    """Loads an orbit from a .csv file.

    Args:
        file_name (str): The file name to be loaded.

    Returns:
        The states as an array of shape (n, d).

    """

    logger.debug('Loading %s ...', file_name)

    with _open(file_name, 'r') as f:
        table = np.loadtxt(f, delimiter=',', skiprows=1, ndmin=2)

    return table[:, 1:]


def save_ergl(file_name, states, jacobians=None):
    """Saves states and optional Jacobians in the compact ERGL binary format.

    Args:
        file_name (str): The file name to be saved.
        states (np.array): States of shape (n, d).
        jacobians (np.array): Jacobians of shape (n, d, d); NaN marks undefined ones.

    """

    logger.debug('Saving %s ...', file_name)

    states = np.ascontiguousarray(states, dtype='<f8')
    n, d = states.shape

    with open(file_name, 'wb') as f:
        f.write(ERGL_HEADER.pack(ERGL_MAGIC, ERGL_VERSION, d, n))
        f.write(states.tobytes())

        if jacobians is not None:
            f.write(np.ascontiguousarray(jacobians, dtype='<f8').reshape(n, d, d).tobytes())


def load_ergl(file_name):
    """Loads states and optional Jacobians from an ERGL binary file.

    Args:
        file_name (str): The file name to be loaded.

    Returns:
        A tuple holding the states (n, d) and the Jacobians (n, d, d) or None.

    """

    logger.debug('Loading %s ...', file_name)

    with _open(file_name, 'rb') as f:
        raw = f.read()

    if len(raw) < ERGL_HEADER.size:
        e = f'{file_name}: truncated ERGL header.'

        logger.error(e)

        raise ex.ConfigError(e)

    magic, version, d, n = ERGL_HEADER.unpack_from(raw)

    if magic != ERGL_MAGIC or version != ERGL_VERSION:
        e = f'{file_name}: not an ERGL v{ERGL_VERSION} file (magic={magic!r}, version={version}).'

        logger.error(e)

        raise ex.ConfigError(e)

    payload = np.frombuffer(raw, dtype='<f8', offset=ERGL_HEADER.size)

    # Jacobians are present whenever the payload is large enough to hold them
    if payload.size == n * d:
        return payload.reshape(n, d).astype(np.float64), None

    if payload.size == n * d + n * d * d:
        states = payload[:n * d].reshape(n, d).astype(np.float64)
        jacobians = payload[n * d:].reshape(n, d, d).astype(np.float64)

        return states, jacobians

    e = f'{file_name}: payload of {payload.size} values matches neither {n}x{d} states nor states plus Jacobians.'

    logger.error(e)

    raise ex.ConfigError(e)


def save_json(file_name, obj):
    """Saves an object as an indented .json file.

    Args:
        file_name (str): The file name to be saved.
        obj (dict): JSON-serializable object.

    """

    logger.debug('Saving %s ...', file_name)

    with open(file_name, 'w') as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write('\n')


def load_json(file_name):
    """Loads a .json file.

    Args:
        file_name (str): The file name to be loaded.

    Returns:
        The decoded object.

    """

    logger.debug('Loading %s ...', file_name)

    with _open(file_name, 'r') as f:
        return json.load(f)


def load_config(file_name):
    """Loads a run configuration written in TOML (or JSON, by extension).

    Args:
        file_name (str): The file name to be loaded.

    Returns:
        A dictionary with the raw configuration.

    """

    if str(file_name).endswith('.json'):
        return load_json(file_name)

    logger.debug('Loading %s ...', file_name)

    with _open(file_name, 'rb') as f:
        try:
            return tomllib.load(f)

        except tomllib.TOMLDecodeError as error:
            e = f'{file_name}: invalid TOML ({error}).'

            logger.error(e)

            raise ex.ConfigError(e) from error
