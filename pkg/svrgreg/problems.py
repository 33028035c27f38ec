# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0
"""
Midpoint-rule discretizations of Fredholm integral equations of the first
kind ``int_a^b K(s, t) x(t) dt = y(s)`` and the three classical test problems
``phillips``, ``gravity`` and ``shaw``.
"""

import os
from collections import OrderedDict, namedtuple

import numpy as np
import pandas as pd

from svrgreg.linop import BlockOperator, Observation, load_operator, save_operator
from svrgreg.output import metadata_lines, read_csv, write_csv
from svrgreg.util import DimensionError, ValidationError, check_vector

GRAVITY_DEPTH = 0.25
_SHAW_GUARD = 1e-8


class ProblemInstance(namedtuple('ProblemInstance',
                                 ['operator', 'x_true', 'y_exact', 'grid_s', 'grid_t', 'meta', 'x0'],
                                 defaults=[None])):
    """
    A discretized linear system ``A x = y`` with its sought solution.

    :param BlockOperator operator: The forward operator, one row per sample point.
    :param numeric_array x_true: The sought solution at the quadrature nodes,
        or ``None`` for real data.
    :param Observation y_exact: The exact (or measured) data.
    :param numeric_array grid_s: Sample points ``s_i``.
    :param numeric_array grid_t: Quadrature nodes ``t_j``.
    :param dict meta: Name and generating parameters.
    :param numeric_array x0: Initial guess the instance was built around
        (``x_true - x0 = A^T lambda`` for source-condition instances), or
        ``None`` for the zero vector.
    """
    @property
    def name(self):
        return self.meta.get('name', 'unnamed')

    @property
    def n(self):
        return self.operator.num_blocks

    def initial_guess(self):
        """
        A fresh copy of ``x0``, zeros when unset.
        """
        if self.x0 is None:
            return np.zeros(self.operator.dim)
        return np.array(self.x0, dtype=np.float64)


def midpoints(lower, upper, n):
    """
    Midpoints of the ``n`` equal subintervals of ``[lower, upper]``.
    """
    return lower + (np.arange(1, n + 1) - 0.5) * ((upper - lower) / n)


def discretize(kernel, s_domain, t_domain, x_true_fn, n, name="custom", **params):
    """
    Discretizes a first-kind Fredholm equation by the midpoint rule with
    ``M = N = n`` nodes, sampling the data at the midpoints of ``s_domain``.

    ``kernel(s, t)`` and ``x_true_fn(t)`` must accept numpy arrays.
    Entry ``(i, j)`` of the operator is ``h * K(s_i, t_j)`` with
    ``h = (b - a) / n``.

    :raises: ValidationError if ``n < 2`` or the kernel is not finite at a node.
    """
    n = int(n)
    if n < 2:
        raise ValidationError(f"N must be >= 2, got {n}")
    (c, d), (a, b) = s_domain, t_domain
    grid_s = midpoints(c, d, n)
    grid_t = midpoints(a, b, n)
    values = np.broadcast_to(np.asarray(kernel(grid_s[:, None], grid_t[None, :]), dtype=np.float64), (n, n))
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        i, j = bad[0]
        raise ValidationError(f"kernel is not finite at node (s_{i}={grid_s[i]!r}, t_{j}={grid_t[j]!r})")
    operator = BlockOperator(((b - a) / n) * values)
    x_true = np.array(np.broadcast_to(np.asarray(x_true_fn(grid_t), dtype=np.float64), (n,)))
    y_exact = operator.apply(x_true)
    meta = dict(name=name, n=n, s_domain=[float(c), float(d)], t_domain=[float(a), float(b)], **params)
    return ProblemInstance(operator, x_true, y_exact, grid_s, grid_t, meta)


def phillips_rho(t):
    t = np.asarray(t, dtype=np.float64)
    return np.where(np.abs(t) < 3, 1 + np.cos(np.pi * t / 3), 0.0)


def phillips_kernel(s, t):
    return phillips_rho(s - t)


def phillips(n):
    """
    Phillips' test problem on ``[-6, 6]^2`` with ``K(s, t) = rho(s - t)`` and
    ``x(t) = rho(t)``, where ``rho(t) = 1 + cos(pi t / 3)`` for ``|t| < 3``.
    """
    return discretize(phillips_kernel, (-6., 6.), (-6., 6.), phillips_rho, n, name="phillips")


def gravity_kernel(s, t, depth=GRAVITY_DEPTH):
    return depth * (depth ** 2 + (s - t) ** 2) ** -1.5


def gravity_solution(t):
    return np.sin(np.pi * t) + 0.5 * np.sin(2 * np.pi * t)


def gravity(n, depth=GRAVITY_DEPTH):
    """
    One-dimensional gravity surveying model on ``[0, 1]^2``: a mass
    distribution at ``depth`` below the surface.
    """
    if not depth > 0:
        raise ValidationError(f"depth must be > 0, got {depth}")

    def kernel(s, t):
        return gravity_kernel(s, t, depth)

    return discretize(kernel, (0., 1.), (0., 1.), gravity_solution, n, name="gravity", depth=float(depth))


def shaw_kernel(s, t):
    u = np.pi * (np.sin(s) + np.sin(t))
    small = np.abs(u) < _SHAW_GUARD
    u_safe = np.where(small, 1.0, u)
    sinc_sq = np.where(small, 1 - u ** 2 / 3, (np.sin(u_safe) / u_safe) ** 2)
    return (np.cos(s) + np.cos(t)) ** 2 * sinc_sq


def shaw_solution(t):
    return 2 * np.exp(-6 * (t - 0.8) ** 2) + np.exp(-2 * (t + 0.5) ** 2)


def shaw(n):
    """
    Shaw's one-dimensional image restoration model on ``[-pi/2, pi/2]^2``.
    """
    half = np.pi / 2
    return discretize(shaw_kernel, (-half, half), (-half, half), shaw_solution, n, name="shaw")


PROBLEMS = {
    'phillips': phillips,
    'gravity': gravity,
    'shaw': shaw,
}


def make_problem(name, n, depth=GRAVITY_DEPTH):
    if name not in PROBLEMS:
        raise ValidationError(f"unknown problem {name!r}, expected one of {sorted(PROBLEMS)}")
    if name == 'gravity':
        return gravity(n, depth)
    return PROBLEMS[name](n)


def synthetic_source_instance(operator, lambda_dag, x0, grid_s=None, grid_t=None, **meta):
    """
    Builds an instance whose solution satisfies the source condition
    ``x_true - x0 = A^T lambda_dag`` by construction.
    """
    operator.check_observation(lambda_dag)
    x0 = check_vector(x0, operator.dim, "x0")
    x_true = x0 + operator.apply_adjoint(lambda_dag)
    y_exact = operator.apply(x_true)
    if grid_s is None:
        grid_s = np.arange(operator.num_blocks, dtype=np.float64)
    if grid_t is None:
        grid_t = np.arange(operator.dim, dtype=np.float64)
    meta.setdefault('name', 'source')
    return ProblemInstance(operator, x_true, y_exact, grid_s, grid_t, meta, x0)


def source_instance(base, seed, x0=None, scale=1.0):
    """
    Draws a seeded Gaussian ``lambda_dag`` and builds a source-condition
    instance on the operator of ``base``.
    """
    operator = base.operator
    rng = np.random.default_rng(seed)
    lambda_dag = Observation(scale * rng.standard_normal(operator.num_rows), operator.block_ranges)
    if x0 is None:
        x0 = np.zeros(operator.dim)
    return synthetic_source_instance(operator, lambda_dag, x0, base.grid_s, base.grid_t,
                                     name='source', base=base.name, seed=int(seed), scale=float(scale))


def save_instance(instance, prefix, config=None, **fields):
    """
    Writes the operator files plus ``<prefix>.x.csv`` (columns ``t``,
    ``x_true`` and ``x0`` when known) and ``<prefix>.y.csv`` (columns ``s``,
    ``y_exact``). Every CSV carries the metadata block of
    :func:`~svrgreg.output.write_csv` with ``config``, the instance parameters
    and any extra ``fields``.
    """
    fields.setdefault('instance', dict(instance.meta))
    save_operator(instance.operator, prefix, metadata_lines(config, **fields))
    columns = OrderedDict([('t', instance.grid_t)])
    if instance.x_true is not None:
        columns['x_true'] = instance.x_true
    if instance.x0 is not None:
        columns['x0'] = instance.x0
    write_csv(pd.DataFrame(columns), prefix + ".x.csv", config, **fields)
    s = instance.grid_s if len(instance.grid_s) == len(instance.y_exact) else np.arange(len(instance.y_exact))
    write_csv(pd.DataFrame({'s': s, 'y_exact': instance.y_exact.data}), prefix + ".y.csv", config, **fields)


def load_instance(prefix):
    """
    Reads an instance written by :func:`save_instance`. A missing ``x_true``
    column yields a real-data instance with ``x_true = None``.
    """
    operator = load_operator(prefix)
    x_frame = read_csv(prefix + ".x.csv") if os.path.exists(prefix + ".x.csv") else None
    y_frame = read_csv(prefix + ".y.csv")
    y_exact = operator.observation(y_frame['y_exact'].to_numpy(dtype=np.float64))
    x_true = x0 = None
    grid_t = np.arange(operator.dim, dtype=np.float64)
    if x_frame is not None:
        grid_t = x_frame['t'].to_numpy(dtype=np.float64)
        if 'x_true' in x_frame:
            x_true = x_frame['x_true'].to_numpy(dtype=np.float64)
            if x_true.shape[0] != operator.dim:
                raise DimensionError(f"x_true has length {x_true.shape[0]}, operator has d={operator.dim}")
        if 'x0' in x_frame:
            x0 = check_vector(x_frame['x0'].to_numpy(dtype=np.float64), operator.dim, "x0")
    meta = dict(name='file', path=prefix)
    return ProblemInstance(operator, x_true, y_exact, y_frame['s'].to_numpy(dtype=np.float64), grid_t, meta, x0)


__all__ = [
    'GRAVITY_DEPTH',
    'PROBLEMS',
    'ProblemInstance',
    'discretize',
    'gravity',
    'gravity_kernel',
    'gravity_solution',
    'load_instance',
    'make_problem',
    'midpoints',
    'phillips',
    'phillips_kernel',
    'phillips_rho',
    'save_instance',
    'shaw',
    'shaw_kernel',
    'shaw_solution',
    'source_instance',
    'synthetic_source_instance',
]
