# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import json
import os
from collections import namedtuple
from numbers import Number

import numpy as np

from svrgreg.util import DimensionError, ValidationError, check_vector, lazy_property, logger

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 5000


def _check_block_ranges(block_ranges, total):
    """
    Normalizes ``block_ranges`` to a tuple of ``(start, stop)`` int pairs and
    checks that they partition ``[0, total)`` in order with nonempty blocks.
    """
    block_ranges = tuple((int(start), int(stop)) for start, stop in block_ranges)
    if not block_ranges:
        raise ValidationError("at least one block is required")
    position = 0
    for i, (start, stop) in enumerate(block_ranges):
        if start != position or stop <= start:
            raise ValidationError(f"block_ranges must partition [0, {total}) in order; "
                                  f"block {i} is [{start}, {stop})")
        position = stop
    if position != total:
        raise ValidationError(f"block_ranges cover [0, {position}) but there are {total} rows")
    return block_ranges


def unit_block_ranges(num_rows):
    return tuple((i, i + 1) for i in range(num_rows))


class Observation(object):
    """
    An element ``y = (y_1, ..., y_N)`` of the product data space, stored as one
    stacked vector together with the row ranges of its blocks.

    :param numeric_array data: The stacked 1-d data.
    :param tuple block_ranges: Half-open ``(start, stop)`` row ranges, one per block.
        Defaults to one entry per block.
    """
    def __init__(self, data, block_ranges=None):
        data = np.array(data, dtype=np.float64)
        if data.ndim != 1:
            raise DimensionError(f"observation data must be 1-d, got shape {data.shape}")
        if block_ranges is None:
            block_ranges = unit_block_ranges(data.shape[0])
        self.block_ranges = _check_block_ranges(block_ranges, data.shape[0])
        self.data = data

    @classmethod
    def from_blocks(cls, blocks):
        blocks = [np.atleast_1d(np.asarray(b, dtype=np.float64)) for b in blocks]
        stops = np.cumsum([len(b) for b in blocks])
        starts = np.concatenate([[0], stops[:-1]])
        return cls(np.concatenate(blocks), tuple(zip(starts, stops)))

    @classmethod
    def zeros(cls, block_ranges):
        total = block_ranges[-1][1]
        return cls(np.zeros(total), block_ranges)

    def __repr__(self):
        return 'Observation({}, num_blocks={})'.format(self.data, self.num_blocks)

    def __len__(self):
        return self.data.shape[0]

    @property
    def num_blocks(self):
        return len(self.block_ranges)

    @property
    def blocks(self):
        return [self.data[start:stop] for start, stop in self.block_ranges]

    def block(self, i):
        start, stop = self.block_ranges[i]
        return self.data[start:stop]

    def norm(self):
        return float(np.linalg.norm(self.data))

    def conforms(self, other):
        return self.block_ranges == other.block_ranges

    def _binary(self, other, op):
        if isinstance(other, Observation):
            if not self.conforms(other):
                raise DimensionError("observations have different block structures")
            return Observation(op(self.data, other.data), self.block_ranges)
        if isinstance(other, Number):
            return Observation(op(self.data, other), self.block_ranges)
        return NotImplemented

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        if not isinstance(other, Number):
            return NotImplemented
        return self._binary(other, np.multiply)

    __rmul__ = __mul__

    def __neg__(self):
        return Observation(-self.data, self.block_ranges)


class NormEstimate(namedtuple('NormEstimate', ['value', 'num_iters', 'converged'])):
    """
    Result of :func:`power_iteration`: the estimated norm, the number of
    iterations spent and whether the relative change reached ``tol``.
    """
    pass


def power_iteration(matvec, rmatvec, dim, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """
    Estimates the largest singular value of a linear map by power iteration
    on ``A^T A``, starting from the normalized all-ones vector.

    The returned value is the square root of the Rayleigh quotient, so it never
    exceeds the true norm (up to rounding).

    :param callable matvec: ``x -> A x``.
    :param callable rmatvec: ``z -> A^T z``.
    :param int dim: Dimension of the domain.
    :param float tol: Relative change of the eigenvalue estimate to stop at.
    :param int max_iter: Iteration budget.
    :rtype: NormEstimate
    """
    if not tol > 0:
        raise ValidationError(f"tol must be > 0, got {tol}")
    if max_iter < 1:
        raise ValidationError(f"max_iter must be >= 1, got {max_iter}")
    v = np.full(dim, 1.0 / np.sqrt(dim))
    w = rmatvec(matvec(v))
    if not np.any(w):
        # ones is in the null space of A^T A; use a fixed pseudo-random start
        v = np.random.default_rng(0).standard_normal(dim)
        v /= np.linalg.norm(v)
        w = rmatvec(matvec(v))
        if not np.any(w):
            return NormEstimate(0.0, 1, True)
    lam = float(v @ w)
    for it in range(1, max_iter + 1):
        v = w / np.linalg.norm(w)
        u = matvec(v)
        w = rmatvec(u)
        new_lam = float(u @ u)
        if abs(new_lam - lam) <= tol * new_lam:
            return NormEstimate(float(np.sqrt(new_lam)), it, True)
        lam = new_lam
    return NormEstimate(float(np.sqrt(lam)), max_iter, False)


class BlockOperator(object):
    """
    The forward map ``A = (A_1, ..., A_N)`` of a block-structured linear
    system, stored as a dense row-major matrix whose rows are grouped into
    ``N`` consecutive blocks. Blocks are indexed ``0, ..., N - 1``.

    The operator is immutable; norm estimates are computed once and cached.

    :param numeric_array entries: Dense matrix of shape ``(M_total, d)``.
    :param tuple block_ranges: Half-open row ranges partitioning the rows.
        Defaults to one row per block.
    """
    def __init__(self, entries, block_ranges=None):
        entries = np.array(entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise DimensionError(f"entries must be a nonempty matrix, got shape {entries.shape}")
        if block_ranges is None:
            block_ranges = unit_block_ranges(entries.shape[0])
        self.block_ranges = _check_block_ranges(block_ranges, entries.shape[0])
        entries.setflags(write=False)
        self.entries = entries
        self.cached_op_norm = None
        self.cached_block_norm_max = None
        self.norm_info = None

    @classmethod
    def from_blocks(cls, blocks):
        blocks = [np.atleast_2d(np.asarray(b, dtype=np.float64)) for b in blocks]
        stops = np.cumsum([b.shape[0] for b in blocks])
        starts = np.concatenate([[0], stops[:-1]])
        return cls(np.vstack(blocks), tuple(zip(starts, stops)))

    def __repr__(self):
        return 'BlockOperator(shape={}, num_blocks={})'.format(self.shape, self.num_blocks)

    @property
    def shape(self):
        return self.entries.shape

    @property
    def dim(self):
        return self.entries.shape[1]

    @property
    def num_rows(self):
        return self.entries.shape[0]

    @property
    def num_blocks(self):
        return len(self.block_ranges)

    @lazy_property
    def unit_blocks(self):
        return all(stop - start == 1 for start, stop in self.block_ranges)

    @lazy_property
    def block_views(self):
        return tuple(self.entries[start:stop] for start, stop in self.block_ranges)

    def block(self, i):
        """
        Returns the rows of block ``i`` as a read-only view.
        """
        if not 0 <= i < self.num_blocks:
            raise IndexError(f"block index {i} out of range for {self.num_blocks} blocks")
        return self.block_views[i]

    def check_observation(self, z):
        if not isinstance(z, Observation) or z.block_ranges != self.block_ranges:
            raise DimensionError("observation does not conform to the operator's block structure")
        return z

    def observation(self, data):
        """
        Wraps stacked data in an :class:`Observation` with this operator's blocks.
        """
        return Observation(check_vector(data, self.num_rows, "data"), self.block_ranges)

    def apply(self, x):
        x = check_vector(x, self.dim)
        return Observation(self.entries @ x, self.block_ranges)

    __call__ = apply

    def apply_adjoint(self, z):
        z = self.check_observation(z)
        return self.entries.T @ z.data

    def apply_block(self, i, x):
        x = check_vector(x, self.dim)
        return self.block(i) @ x

    def apply_block_adjoint(self, i, z_i):
        rows = self.block(i)
        z_i = check_vector(np.atleast_1d(z_i), rows.shape[0], "z_i")
        return rows.T @ z_i

    def residual(self, x, y):
        """
        Returns the stacked residual ``A x - y`` as a plain array.
        """
        return self.entries @ x - y.data

    def operator_norm(self, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
        """
        Estimates ``||A||`` by power iteration on ``A^T A`` and caches it.
        Metadata of the estimate is kept in :attr:`norm_info`.
        """
        if self.cached_op_norm is not None:
            return self.cached_op_norm
        if not np.any(self.entries):
            info = NormEstimate(0.0, 0, True)
        else:
            info = power_iteration(self.entries.__matmul__, self.entries.T.__matmul__, self.dim, tol, max_iter)
            if not info.converged:
                logger.warning("power iteration did not reach tol=%g within %d iterations", tol, max_iter)
        self.norm_info = info
        self.cached_op_norm = info.value
        return info.value

    def max_block_norm(self, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
        """
        Computes ``L = max_i ||A_i||`` and caches it. Single-row blocks use
        the exact row norms; larger blocks use :func:`power_iteration`.
        """
        if self.cached_block_norm_max is not None:
            return self.cached_block_norm_max
        if self.unit_blocks:
            value = float(np.linalg.norm(self.entries, axis=1).max())
        else:
            value = 0.0
            for rows in self.block_views:
                if not np.any(rows):
                    continue
                info = power_iteration(rows.__matmul__, rows.T.__matmul__, self.dim, tol, max_iter)
                if not info.converged:
                    logger.warning("block power iteration did not reach tol=%g", tol)
                value = max(value, info.value)
        self.cached_block_norm_max = value
        return value


def save_operator(operator, prefix, metadata=None):
    """
    Writes ``<prefix>.csv`` (entries with 17 significant digits behind a
    ``#`` metadata block) and the ``<prefix>.json`` sidecar
    ``{N, d, block_ranges}``.

    :param list metadata: Lines for the metadata block; defaults to
        :func:`~svrgreg.output.metadata_lines` with the operator shape.
    """
    if metadata is None:
        from svrgreg.output import metadata_lines

        metadata = metadata_lines(operator={"N": operator.num_blocks, "d": operator.dim})
    directory = os.path.dirname(prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)
    np.savetxt(prefix + ".csv", operator.entries, fmt="%.17g", delimiter=",",
               header="\n".join(metadata), comments="# ")
    sidecar = {
        "N": operator.num_blocks,
        "d": operator.dim,
        "block_ranges": [list(r) for r in operator.block_ranges],
    }
    with open(prefix + ".json", "w") as f:
        json.dump(sidecar, f, indent=2)


def load_operator(prefix):
    with open(prefix + ".json") as f:
        sidecar = json.load(f)
    entries = np.loadtxt(prefix + ".csv", delimiter=",", dtype=np.float64, ndmin=2)
    if entries.shape[1] != sidecar["d"]:
        raise DimensionError(f"{prefix}.csv has {entries.shape[1]} columns, sidecar says d={sidecar['d']}")
    operator = BlockOperator(entries, sidecar["block_ranges"])
    if operator.num_blocks != sidecar["N"]:
        raise DimensionError(f"sidecar says N={sidecar['N']} but block_ranges has {operator.num_blocks} blocks")
    return operator


__all__ = [
    'BlockOperator',
    'NormEstimate',
    'Observation',
    'load_operator',
    'power_iteration',
    'save_operator',
    'unit_block_ranges',
]
