# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import numbers
from collections import namedtuple

import numpy as np
from multipledispatch import dispatch

from svrgreg.linop import BlockOperator, Observation
from svrgreg.stepsize import plan_for_operator


class ActualExpected(namedtuple('LazyComparison', ['actual', 'expected'])):
    """
    Lazy string formatter for test assertions.
    """
    def __repr__(self):
        return '\n'.join(['Expected:', str(self.expected), 'Actual:', str(self.actual)])


@dispatch(numbers.Number, numbers.Number)
def allclose(a, b, rtol=1e-05, atol=1e-08):
    return abs(a - b) <= atol + rtol * abs(b)


@dispatch(np.ndarray, np.ndarray)
def allclose(a, b, rtol=1e-05, atol=1e-08):
    return a.shape == b.shape and np.allclose(a, b, rtol=rtol, atol=atol)


@dispatch(Observation, Observation)
def allclose(a, b, rtol=1e-05, atol=1e-08):
    return a.conforms(b) and allclose(a.data, b.data, rtol=rtol, atol=atol)


def assert_close(actual, expected, atol=1e-6, rtol=1e-6):
    msg = ActualExpected(actual, expected)
    if isinstance(actual, Observation):
        assert isinstance(expected, Observation), msg
        assert actual.block_ranges == expected.block_ranges, msg
    elif isinstance(actual, np.ndarray):
        expected = np.asarray(expected, dtype=actual.dtype)
        assert actual.shape == expected.shape, msg
    assert allclose(actual, expected, rtol=rtol, atol=atol), msg


def random_block_ranges(num_rows, num_blocks, rng=None):
    """
    A random partition of ``range(num_rows)`` into ``num_blocks`` nonempty
    consecutive blocks.
    """
    assert 1 <= num_blocks <= num_rows
    rng = np.random if rng is None else rng
    cuts = np.sort(rng.choice(np.arange(1, num_rows), size=num_blocks - 1, replace=False))
    bounds = [0] + [int(c) for c in cuts] + [num_rows]
    return tuple(zip(bounds[:-1], bounds[1:]))


def random_operator(num_blocks, dim, rows_per_block=1, scale=1.0, rng=None):
    """
    A dense Gaussian :class:`~svrgreg.linop.BlockOperator` with
    ``rows_per_block`` rows in each of ``num_blocks`` blocks.
    """
    rng = np.random if rng is None else rng
    entries = scale * rng.standard_normal((num_blocks * rows_per_block, dim)) / np.sqrt(dim)
    ranges = tuple((i * rows_per_block, (i + 1) * rows_per_block) for i in range(num_blocks))
    return BlockOperator(entries, ranges)


def random_plan(operator, rng=None, m=None):
    """
    An admissible step size plan with ``alpha`` in ``(0.2, 1.8)`` and
    ``beta`` in ``(0.2, 0.95)``.
    """
    rng = np.random if rng is None else rng
    if m is None:
        m = int(rng.randint(1, operator.num_blocks + 1))
    return plan_for_operator(operator, alpha=rng.uniform(0.2, 1.8), beta=rng.uniform(0.2, 0.95), m=m)


__all__ = [
    'ActualExpected',
    'allclose',
    'assert_close',
    'random_block_ranges',
    'random_operator',
    'random_plan',
]
