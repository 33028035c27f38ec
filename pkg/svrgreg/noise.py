# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import numpy as np
from multipledispatch import dispatch

from svrgreg.linop import Observation
from svrgreg.util import ValidationError

RNG_ALGORITHM = f"numpy-{np.__version__} PCG64 standard_normal(ziggurat)"
_MAX_SEED = 2 ** 64


def check_seed(seed, name="seed"):
    """
    Returns ``seed`` as an int after checking that it is a 64-bit unsigned integer.

    :raises: ValidationError otherwise.
    """
    try:
        valid = not isinstance(seed, bool) and int(seed) == seed and 0 <= int(seed) < _MAX_SEED
    except (TypeError, ValueError, OverflowError):
        valid = False
    if not valid:
        raise ValidationError(f"{name} must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def make_rng(seed):
    """
    The pinned generator used for every random draw in the package.
    """
    return np.random.Generator(np.random.PCG64(check_seed(seed)))


class NoisyObservation(Observation):
    """
    Perturbed data ``y^delta`` together with its realized noise level
    ``delta = ||y^delta - y||``, which is recomputed here from the exact data.

    :param numeric_array data: Stacked noisy data.
    :param tuple block_ranges: Block structure shared with ``exact``.
    :param Observation exact: The unperturbed data ``y``.
    :param float delta_rel: Relative noise level used to generate the data.
    :param int seed: Seed of the generator that drew the noise.
    """
    def __init__(self, data, block_ranges, exact, delta_rel, seed):
        super().__init__(data, block_ranges)
        assert self.conforms(exact)
        self.exact = exact
        self.delta = float(np.linalg.norm(self.data - exact.data))
        self.delta_rel = float(delta_rel)
        self.seed = seed

    def __repr__(self):
        return 'NoisyObservation(delta={}, delta_rel={}, seed={})'.format(self.delta, self.delta_rel, self.seed)


def add_relative_noise(y, delta_rel, seed):
    """
    Perturbs each component as ``y_i + delta_rel * |y_i| * eps_i`` with
    i.i.d. standard Gaussian ``eps_i`` drawn in component order.
    """
    if not delta_rel >= 0:
        raise ValidationError(f"delta_rel must be >= 0, got {delta_rel}")
    eps = make_rng(seed).standard_normal(len(y))
    data = y.data + delta_rel * np.abs(y.data) * eps
    return NoisyObservation(data, y.block_ranges, y, delta_rel, seed)


def add_noise(y, delta, seed):
    """
    Adds noise of exact Euclidean norm ``delta`` along a seeded Gaussian
    direction. ``delta_rel`` of the result is ``delta / ||y||``.
    """
    if not delta >= 0:
        raise ValidationError(f"delta must be >= 0, got {delta}")
    eps = make_rng(seed).standard_normal(len(y))
    data = y.data + delta * eps / np.linalg.norm(eps)
    y_norm = y.norm()
    delta_rel = delta / y_norm if y_norm > 0 else (0.0 if delta == 0 else float('inf'))
    return NoisyObservation(data, y.block_ranges, y, delta_rel, seed)


@dispatch(Observation)
def noise_level(obs):
    return 0.0


@dispatch(NoisyObservation)
def noise_level(obs):
    return obs.delta


__all__ = [
    'NoisyObservation',
    'RNG_ALGORITHM',
    'add_noise',
    'add_relative_noise',
    'check_seed',
    'make_rng',
    'noise_level',
]
