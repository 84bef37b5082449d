"""
Utility functions shared across the package: seeded random
generators, dispersion helpers and deterministic table / JSON writers.

:organization: semnet_analyzer developers
:date: 2026-10-19
"""

import hashlib
import json
import os

import numpy as np

RNG_ALGORITHM = 'PCG64'

FLOAT_FORMAT = '%.10g'


def make_rng(seed):
    """
    Create a reproducible random generator.

    Parameters
    ----------
    seed : int or numpy.random.SeedSequence
        A non-negative 64-bit integer, or a seed sequence
        spawned from one.

    Returns
    -------
    rng : numpy.random.Generator
        A ``PCG64`` generator.

    Raises
    ------
    ValueError
        If the seed is negative or not an integer.
    """
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.PCG64(seed))
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise ValueError(f'The seed must be a non-negative integer, not {seed!r}.')
    if seed < 0 or seed >= 2**64:
        raise ValueError(f'The seed must fit in 64 unsigned bits, not {seed}.')
    return np.random.Generator(np.random.PCG64(int(seed)))


def sample_std(values):
    """
    Calculate the sample standard deviation (``ddof=1``).

    Parameters
    ----------
    values : array-like
        The sample.

    Returns
    -------
    std : float
        The sample standard deviation, or 0 for
        fewer than two values.
    """
    values = np.asarray(values, dtype=float)
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1))


def to_builtin(value):
    """
    Recursively convert numpy scalars and arrays, tuples
    and sets into plain Python objects for JSON output.
    Non-finite floats become None.
    """
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_builtin(item) for item in items]
    if isinstance(value, np.ndarray):
        return [to_builtin(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    return value


def config_hash(config):
    """
    Hash a configuration dictionary.

    Parameters
    ----------
    config : dict
        A JSON-serializable configuration.

    Returns
    -------
    digest : str
        The first 16 hexadecimal digits of the SHA-256
        of the canonical JSON encoding.
    """
    canonical = json.dumps(to_builtin(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


def write_json(obj, path):
    """
    Write an object as pretty-printed JSON with sorted keys.

    Parameters
    ----------
    obj : object
        The object; numpy values are converted.
    path : str
        The output file path. Parent directories are created.
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as json_file:
        json.dump(to_builtin(obj), json_file, indent=2, sort_keys=True, ensure_ascii=False)
        json_file.write('\n')


def write_table(frame, path, index=False):
    """
    Write a pandas DataFrame as a tab-separated UTF-8 table
    with a fixed float format.

    Parameters
    ----------
    frame : pandas DataFrame
        The table.
    path : str
        The output file path. Parent directories are created.
    index : bool, optional
        Whether to write the index.
        Defaults to False.
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    frame.to_csv(path, sep='\t', index=index, float_format=FLOAT_FORMAT, encoding='utf-8')
