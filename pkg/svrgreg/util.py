# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import functools
import logging
import os

import numpy as np

VERSION = "0.1.0"

_DEBUG = int(os.environ.get("SVRGREG_DEBUG", 0))
_WORKERS = int(os.environ.get("SVRGREG_WORKERS", 1))

logger = logging.getLogger("svrgreg")
if _DEBUG:
    logger.setLevel(logging.DEBUG)


class ValidationError(ValueError):
    """
    Raised when a parameter violates a documented precondition.
    """
    pass


class DimensionError(ValueError):
    """
    Raised when a vector or observation does not conform to an operator.
    """
    pass


class AdmissibilityWarning(UserWarning):
    """
    Step sizes outside the range for which the stability and convergence
    estimates hold. The computation still runs.
    """
    pass


class lazy_property(object):
    def __init__(self, fn):
        self.fn = fn
        functools.update_wrapper(self, fn)

    def __get__(self, obj, objtype=None):
        if obj is None:
            return self
        value = self.fn(obj)
        setattr(obj, self.fn.__name__, value)
        return value


def get_debug():
    return _DEBUG


def get_default_workers():
    """
    Default number of ensemble workers, read from ``SVRGREG_WORKERS``.
    """
    return max(1, _WORKERS)


def check_positive(name, value, strict=True):
    if strict and not value > 0:
        raise ValidationError(f"{name} must be > 0, got {value}")
    if not strict and not value >= 0:
        raise ValidationError(f"{name} must be >= 0, got {value}")
    return value


def check_vector(x, dim, name="x"):
    """
    Converts ``x`` to a 1-d float64 array of length ``dim``.

    :raises: DimensionError
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != dim:
        raise DimensionError(f"incompatible vector length: {name} has shape {x.shape}, expected ({dim},)")
    return x


def round_half_up(value):
    return int(np.floor(value + 0.5))


__all__ = [
    'AdmissibilityWarning',
    'VERSION',
    'DimensionError',
    'ValidationError',
    'check_positive',
    'check_vector',
    'get_debug',
    'get_default_workers',
    'lazy_property',
    'logger',
    'round_half_up',
]
