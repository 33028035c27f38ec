# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0
"""
Flat-file output. Every CSV starts with ``#``-prefixed metadata lines (package
version, the full configuration, seeds, generator and quantile convention)
followed by a header row. Nothing time-dependent goes into the metadata, so
identical configurations give identical files.
"""

import json
import os

import numpy as np
import pandas as pd

from svrgreg.noise import RNG_ALGORITHM
from svrgreg.util import VERSION, logger

QUANTILE_METHOD = "linear"
FLOAT_FORMAT = "%.17g"


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def metadata_lines(config=None, **fields):
    lines = [f"svrgreg_version: {VERSION}", f"rng: {RNG_ALGORITHM}", f"quantiles: {QUANTILE_METHOD}"]
    if config is not None:
        lines.append("config: " + json.dumps(_jsonable(config), sort_keys=True))
    for key in sorted(fields):
        lines.append(f"{key}: " + json.dumps(_jsonable(fields[key]), sort_keys=True))
    return lines


def write_csv(frame, path, config=None, **fields):
    """
    Writes ``frame`` to ``path`` behind a metadata block built from
    ``config`` and any extra ``fields`` (seeds, instance info).
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="") as f:
        for line in metadata_lines(config, **fields):
            f.write("# " + line + "\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT)
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path


def read_metadata(path):
    """
    Returns the metadata block of a CSV written by :func:`write_csv` as a dict.
    JSON-valued entries are decoded.
    """
    metadata = {}
    with open(path) as f:
        for line in f:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition(": ")
            try:
                metadata[key] = json.loads(value)
            except ValueError:
                metadata[key] = value
    return metadata


def read_csv(path):
    return pd.read_csv(path, comment="#", float_precision="round_trip")


def write_vector(x, path, config=None, **fields):
    return write_csv(pd.DataFrame({'index': np.arange(len(x)), 'x': x}), path, config, **fields)


__all__ = [
    'FLOAT_FORMAT',
    'QUANTILE_METHOD',
    'metadata_lines',
    'read_csv',
    'read_metadata',
    'write_csv',
    'write_vector',
]
