# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0
"""
Iterative regularization methods for ``A x = y`` with block operators:
Landweber, stochastic gradient descent, the original SVRG iteration with a
single step size, the split-step SVRG iteration, its dual formulation on
exact data and split-step SVRG stopped by the discrepancy principle.

Every solver records one snapshot per epoch, starting with the initial guess
at epoch 0, and stops early when a ``monitor(epoch, x, residual_norm)``
returns True.
"""

import time
import warnings
from collections import namedtuple
from numbers import Number

import numpy as np
import pandas as pd

from svrgreg.linop import Observation
from svrgreg.noise import NoisyObservation, make_rng, noise_level
from svrgreg.stepsize import check_admissible, plan_from_gammas
from svrgreg.stopping import Discrepancy
from svrgreg.util import AdmissibilityWarning, ValidationError, check_vector, get_debug, logger

DEFAULT_MAX_EPOCHS = 100000


class SamplePath(namedtuple('SamplePath', ['indices', 'seed', 'm'])):
    """
    The realized block indices ``i_{n,k}`` of a stochastic run, flattened in
    ``(epoch, inner step)`` order. Indices are 0-based.
    """
    def __new__(cls, indices, seed=None, m=1):
        indices = np.asarray(indices, dtype=np.int64)
        assert indices.ndim == 1
        assert int(m) >= 1
        return super(SamplePath, cls).__new__(cls, indices, seed, int(m))

    @property
    def epochs(self):
        return len(self.indices) // self.m

    def epoch(self, n):
        return self.indices[n * self.m:(n + 1) * self.m]

    def check(self, num_blocks):
        if len(self.indices) and not (0 <= self.indices.min() and self.indices.max() < num_blocks):
            raise ValidationError(f"sample path contains indices outside [0, {num_blocks})")
        return self


def draw_path(num_blocks, m, epochs, seed):
    """
    Draws a full sample path with the same stream a seeded solver run uses.
    """
    source = _IndexSource(num_blocks, m, seed, None)
    for n in range(epochs):
        source.draw(n)
    return source.to_path()


class _IndexSource(object):
    """
    Supplies the ``m`` indices of each epoch, either drawn from a seeded
    generator (and recorded) or replayed from a given path.
    """
    def __init__(self, num_blocks, m, seed, path):
        self.num_blocks = num_blocks
        self.m = m
        if path is not None:
            if path.m != m:
                raise ValidationError(f"sample path has m={path.m}, solver uses m={m}")
            self.path = path.check(num_blocks)
            self.seed = path.seed
            self.rng = None
        else:
            if seed is None:
                raise ValidationError("a seed or a sample path is required")
            self.path = None
            self.seed = int(seed)
            self.rng = make_rng(seed)
            self.drawn = []

    def draw(self, n):
        if self.rng is None:
            if n >= self.path.epochs:
                raise ValidationError(f"sample path covers {self.path.epochs} epochs, epoch {n} requested")
            return self.path.epoch(n)
        indices = self.rng.integers(0, self.num_blocks, size=self.m)
        self.drawn.append(indices)
        return indices

    def to_path(self):
        if self.rng is None:
            return self.path
        indices = np.concatenate(self.drawn) if self.drawn else np.zeros(0, dtype=np.int64)
        return SamplePath(indices, self.seed, self.m)


class DualState(namedtuple('DualState', ['lambda_n', 'lambda_nk', 'mu_n', 'mu_nk'])):
    """
    Dual variables of one epoch: ``lambda_n`` and ``mu_n = A x_n - y`` at the
    snapshot, ``lambda_nk`` and ``mu_nk`` after the last inner step. All are
    :class:`~svrgreg.linop.Observation` s.
    """
    pass


class SolveTrace(object):
    """
    Per-epoch record of a solver run.

    :ivar str method: Name of the method.
    :ivar numeric_array residual_norms: ``||A x_n - y^delta||`` for ``n = 0, 1, ...``.
    :ivar numeric_array errors: ``||x_n - x_true||^2 / ||x_true||^2`` or ``None``
        when the solution is unknown.
    :ivar list iterates: Snapshots ``x_n`` (every ``snapshot_every`` epochs) or ``None``.
    :ivar numeric_array x_final: The last iterate.
    :ivar stop_index: Epoch at which a monitor stopped the run, or ``None``.
    :ivar bool terminated: Whether the run stopped by its monitor.
    :ivar SamplePath path: Indices used (``None`` for Landweber).
    :ivar float wall_time: Seconds spent.
    :ivar numeric_array wall_times: Cumulative seconds at each epoch.
    :ivar numeric_array block_steps: Cumulative block gradient evaluations.
    """
    def __init__(self, method, residual_norms, errors, iterates, x_final, stop_index, terminated,
                 path, wall_time, wall_times, block_steps, snapshot_every=1, inner_iterates=None, dual=None):
        self.method = method
        self.residual_norms = residual_norms
        self.errors = errors
        self.iterates = iterates
        self.x_final = x_final
        self.stop_index = stop_index
        self.terminated = terminated
        self.path = path
        self.wall_time = wall_time
        self.wall_times = wall_times
        self.block_steps = block_steps
        self.snapshot_every = snapshot_every
        self.inner_iterates = inner_iterates
        self.dual = dual
        assert len(residual_norms) == len(wall_times) == len(block_steps)
        assert errors is None or len(errors) == len(residual_norms)
        assert stop_index is None or stop_index <= self.epochs

    def __repr__(self):
        return 'SolveTrace(method={!r}, epochs={}, stop_index={})'.format(self.method, self.epochs, self.stop_index)

    @property
    def epochs(self):
        return len(self.residual_norms) - 1

    @property
    def relative_errors(self):
        return None if self.errors is None else np.sqrt(self.errors)

    @property
    def final_error(self):
        return None if self.errors is None else float(self.errors[-1])

    def to_frame(self, wall_time=True):
        columns = {
            'epoch': np.arange(len(self.residual_norms)),
            'residual_norm': self.residual_norms,
        }
        if self.errors is not None:
            columns['relative_error_sq'] = self.errors
            columns['relative_error'] = self.relative_errors
        columns['cumulative_block_steps'] = self.block_steps
        if wall_time:
            columns['wall_time_s'] = self.wall_times
        return pd.DataFrame(columns)


class _Recorder(object):
    def __init__(self, method, operator, y, x_true, monitor, steps_per_epoch, store_iterates, snapshot_every):
        self.method = method
        self.entries = operator.entries
        self.y = y.data
        self.x_true = x_true
        self.x_true_sq = None
        if x_true is not None:
            self.x_true = check_vector(x_true, operator.dim, "x_true")
            self.x_true_sq = float(self.x_true @ self.x_true) or 1.0
        self.monitor = monitor
        self.steps_per_epoch = steps_per_epoch
        self.store_iterates = store_iterates
        self.snapshot_every = max(1, int(snapshot_every))
        self.residual_norms = []
        self.errors = []
        self.iterates = []
        self.wall_times = []
        self.start = time.perf_counter()

    def record(self, epoch, x):
        """
        Records epoch ``epoch`` and returns the residual ``A x - y`` and
        whether the monitor asks to stop.
        """
        r = self.entries @ x - self.y
        residual_norm = float(np.linalg.norm(r))
        self.residual_norms.append(residual_norm)
        if self.x_true is not None:
            e = x - self.x_true
            self.errors.append(float(e @ e) / self.x_true_sq)
        if self.store_iterates and epoch % self.snapshot_every == 0:
            self.iterates.append(x.copy())
        self.wall_times.append(time.perf_counter() - self.start)
        if get_debug():
            logger.debug("%s epoch %d residual %g", self.method, epoch, residual_norm)
        stop = self.monitor is not None and bool(self.monitor(epoch, x, residual_norm))
        return r, stop

    def finish(self, x, stop_index, terminated, path=None, inner_iterates=None, dual=None):
        epochs = len(self.residual_norms)
        return SolveTrace(
            self.method,
            np.array(self.residual_norms),
            np.array(self.errors) if self.x_true is not None else None,
            self.iterates if self.store_iterates else None,
            x.copy(),
            stop_index,
            terminated,
            path,
            time.perf_counter() - self.start,
            np.array(self.wall_times),
            np.arange(epochs, dtype=np.int64) * self.steps_per_epoch,
            self.snapshot_every,
            inner_iterates,
            dual,
        )


def _check_epochs(epochs, name="epochs"):
    if int(epochs) != epochs or epochs < 0:
        raise ValidationError(f"{name} must be a nonnegative integer, got {epochs}")
    return int(epochs)


def _check_m(m):
    if int(m) != m or m < 1:
        raise ValidationError(f"m must be an integer >= 1, got {m}")
    return int(m)


def _prepare(operator, y, x0):
    operator.check_observation(y)
    return check_vector(x0, operator.dim, "x0").copy()


def landweber(operator, y, x0, gamma, epochs, monitor=None, x_true=None, store_iterates=True, snapshot_every=1):
    """
    Landweber iteration ``x_{n+1} = x_n - gamma A^T (A x_n - y)``.

    Step sizes above ``2 / ||A||^2`` are allowed with an
    :class:`~svrgreg.util.AdmissibilityWarning`.
    """
    x = _prepare(operator, y, x0)
    epochs = _check_epochs(epochs)
    if not gamma > 0:
        raise ValidationError(f"gamma must be > 0, got {gamma}")
    if gamma > 2 / operator.operator_norm() ** 2:
        warnings.warn(f"Landweber step {gamma:g} exceeds 2/||A||^2 = {2 / operator.operator_norm() ** 2:g}",
                      AdmissibilityWarning, stacklevel=2)
    rec = _Recorder('landweber', operator, y, x_true, monitor, operator.num_blocks, store_iterates, snapshot_every)
    entries = operator.entries
    stop_index = None
    for n in range(epochs + 1):
        r, stop = rec.record(n, x)
        if stop:
            stop_index = n
            break
        if n == epochs:
            break
        x -= gamma * (entries.T @ r)
    return rec.finish(x, stop_index, stop_index is not None)


def _step_schedule(step_schedule):
    if isinstance(step_schedule, Number):
        if not step_schedule > 0:
            raise ValidationError(f"step size must be > 0, got {step_schedule}")
        value = float(step_schedule)
        return lambda k: value
    if not callable(step_schedule):
        raise ValidationError("step_schedule must be a positive number or a callable k -> gamma_k")
    return step_schedule


def sgd(operator, y, x0, step_schedule, epochs, seed=None, path=None, monitor=None, x_true=None,
        store_iterates=True, snapshot_every=1):
    """
    Stochastic gradient descent
    ``x_{k+1} = x_k - gamma_k A_i^T (A_i x_k - y_i)`` with ``i`` uniform.
    One epoch is ``N`` single-block steps; ``step_schedule`` is a constant or
    a callable of the global step counter ``k``.
    """
    x = _prepare(operator, y, x0)
    epochs = _check_epochs(epochs)
    schedule = _step_schedule(step_schedule)
    N = operator.num_blocks
    source = _IndexSource(N, N, seed, path)
    rec = _Recorder('sgd', operator, y, x_true, monitor, N, store_iterates, snapshot_every)
    blocks = operator.block_views
    y_blocks = y.blocks
    stop_index = None
    k = 0
    for n in range(epochs + 1):
        _, stop = rec.record(n, x)
        if stop:
            stop_index = n
            break
        if n == epochs:
            break
        for i in source.draw(n):
            gamma = schedule(k)
            if not gamma > 0:
                raise ValidationError(f"step schedule returned {gamma} at step {k}")
            rows = blocks[i]
            x -= gamma * (rows.T @ (rows @ x - y_blocks[i]))
            k += 1
    return rec.finish(x, stop_index, stop_index is not None, source.to_path())


def svrg_classic(operator, y, x0, m, gamma, epochs, seed=None, path=None, monitor=None, x_true=None,
                 store_iterates=True, snapshot_every=1):
    """
    The original SVRG iteration with one step size: per epoch
    ``g_n = A^T (A x_n - y) / N`` and ``m`` inner steps
    ``x_{n,k+1} = x_{n,k} - gamma (A_i^T A_i (x_{n,k} - x_n) + g_n)``.
    """
    x = _prepare(operator, y, x0)
    m = _check_m(m)
    epochs = _check_epochs(epochs)
    if not gamma > 0:
        raise ValidationError(f"gamma must be > 0, got {gamma}")
    N = operator.num_blocks
    source = _IndexSource(N, m, seed, path)
    rec = _Recorder('svrg-classic', operator, y, x_true, monitor, N + m, store_iterates, snapshot_every)
    entries = operator.entries
    blocks = operator.block_views
    stop_index = None
    for n in range(epochs + 1):
        r, stop = rec.record(n, x)
        if stop:
            stop_index = n
            break
        if n == epochs:
            break
        g = (entries.T @ r) / N
        x_n = x
        x = x_n.copy()
        for i in source.draw(n):
            rows = blocks[i]
            x -= gamma * (rows.T @ (rows @ (x - x_n)) + g)
    return rec.finish(x, stop_index, stop_index is not None, source.to_path())


def _svrg_loop(method, operator, y, x0, m, gamma0, gamma1, epochs, seed, path, monitor, x_true,
               store_iterates, snapshot_every, record_inner):
    x = _prepare(operator, y, x0)
    N = operator.num_blocks
    source = _IndexSource(N, m, seed, path)
    if path is not None and monitor is None and path.epochs < epochs:
        raise ValidationError(f"sample path covers {path.epochs} epochs but {epochs} epochs were requested")
    rec = _Recorder(method, operator, y, x_true, monitor, N + m, store_iterates, snapshot_every)
    entries = operator.entries
    blocks = operator.block_views
    inner_iterates = [] if record_inner else None
    stop_index = None
    for n in range(epochs + 1):
        r, stop = rec.record(n, x)
        if stop:
            stop_index = n
            break
        if n == epochs:
            break
        g = entries.T @ r
        x_n = x
        x = x_n - gamma0 * g
        g /= N
        inner = [x.copy()] if record_inner else None
        for i in source.draw(n):
            rows = blocks[i]
            x -= gamma1 * (rows.T @ (rows @ (x - x_n)) + g)
            if record_inner:
                inner.append(x.copy())
        if record_inner:
            inner_iterates.append(np.array(inner))
    return rec, x, stop_index, source, inner_iterates


def _warn_inadmissible(operator, m, gamma0, gamma1):
    plan = plan_from_gammas(gamma0, gamma1, operator.operator_norm(), operator.max_block_norm(), m,
                            operator.num_blocks)
    check_admissible(plan, stacklevel=3)
    return plan


def svrg(operator, y, x0, m, gamma0, gamma1, epochs, seed=None, path=None, monitor=None, x_true=None,
         store_iterates=True, snapshot_every=1, record_inner=False):
    """
    Split-step SVRG: per epoch ``g_n = A^T (A x_n - y)``,
    ``x_{n,0} = x_n - gamma0 g_n`` and ``m`` inner steps
    ``x_{n,k+1} = x_{n,k} - gamma1 (A_i^T A_i (x_{n,k} - x_n) + g_n / N)``
    with ``i`` uniform; ``x_{n+1} = x_{n,m}``.

    Either ``seed`` (the drawn path is recorded in the trace) or an explicit
    ``path`` (replayed exactly) must be given. Inadmissible step sizes emit an
    :class:`~svrgreg.util.AdmissibilityWarning`.

    :raises: ValidationError if ``path`` is shorter than ``epochs * m``.
    """
    m = _check_m(m)
    epochs = _check_epochs(epochs)
    if not (gamma0 > 0 and gamma1 > 0):
        raise ValidationError(f"gamma0 and gamma1 must be > 0, got {gamma0}, {gamma1}")
    _warn_inadmissible(operator, m, gamma0, gamma1)
    rec, x, stop_index, source, inner = _svrg_loop('svrg', operator, y, x0, m, gamma0, gamma1, epochs, seed, path,
                                                   monitor, x_true, store_iterates, snapshot_every, record_inner)
    return rec.finish(x, stop_index, stop_index is not None, source.to_path(), inner)


def svrg_dp(operator, y, x0, m, gamma0, gamma1, tau, max_epochs=DEFAULT_MAX_EPOCHS, seed=None, path=None,
            x_true=None, store_iterates=False, snapshot_every=1, record_inner=False):
    """
    Split-step SVRG terminated by the discrepancy principle: the run stops at
    the first epoch ``n`` with ``||A x_n - y^delta|| <= tau delta``, where
    ``delta`` is the realized noise level of ``y`` (0 for exact data).
    Since all later updates are gated off, stopping yields the same iterates
    as the formally infinite iteration.

    If the principle is not met within ``max_epochs`` epochs the trace has
    ``stop_index = None`` and ``terminated = False``.

    Iterates are only kept with ``store_iterates=True``.

    :raises: ValidationError if ``tau <= 1``.
    """
    if not tau > 1:
        raise ValidationError(f"the discrepancy principle requires tau > 1, got {tau}")
    m = _check_m(m)
    max_epochs = _check_epochs(max_epochs, "max_epochs")
    if max_epochs < 1:
        raise ValidationError(f"max_epochs must be >= 1, got {max_epochs}")
    if not (gamma0 > 0 and gamma1 > 0):
        raise ValidationError(f"gamma0 and gamma1 must be > 0, got {gamma0}, {gamma1}")
    _warn_inadmissible(operator, m, gamma0, gamma1)
    monitor = Discrepancy(tau, noise_level(y))
    rec, x, stop_index, source, inner = _svrg_loop('svrg-dp', operator, y, x0, m, gamma0, gamma1, max_epochs, seed,
                                                   path, monitor, x_true, store_iterates, snapshot_every,
                                                   record_inner)
    if stop_index is None:
        logger.warning("discrepancy principle not met within %d epochs (tau*delta = %g)",
                       max_epochs, monitor.threshold)
    return rec.finish(x, stop_index, stop_index is not None, source.to_path(), inner)


def svrg_dual(operator, y, x0, m, gamma0, gamma1, epochs, path, x_true=None, store_iterates=True):
    """
    Dual formulation of split-step SVRG on exact data. It iterates
    ``lambda`` in the data space and reconstructs every iterate as
    ``x = x0 + A^T lambda``; along a shared path it reproduces :func:`svrg`.

    :raises: ValidationError if ``path`` is missing or ``y`` is noisy.
    """
    if path is None:
        raise ValidationError("svrg_dual replays a given sample path; path is required")
    if isinstance(y, NoisyObservation) and y.delta > 0:
        raise ValidationError("svrg_dual is defined for exact data only")
    x0 = _prepare(operator, y, x0)
    m = _check_m(m)
    epochs = _check_epochs(epochs)
    N = operator.num_blocks
    source = _IndexSource(N, m, None, path)
    if path.epochs < epochs:
        raise ValidationError(f"sample path covers {path.epochs} epochs but {epochs} epochs were requested")
    rec = _Recorder('svrg-dual', operator, y, x_true, None, N + m, store_iterates, 1)
    entries = operator.entries
    ranges = operator.block_ranges
    lam = np.zeros(operator.num_rows)
    x = x0.copy()
    dual = []
    for n in range(epochs + 1):
        mu_n, _ = rec.record(n, x)
        if n == epochs:
            break
        x_n = x
        lam_nk = lam - gamma0 * mu_n
        x = x0 + entries.T @ lam_nk
        for i in source.draw(n):
            start, stop = ranges[i]
            mu_nk = mu_n / N
            mu_nk[start:stop] += entries[start:stop] @ (x - x_n)
            lam_nk = lam_nk - gamma1 * mu_nk
            x = x0 + entries.T @ lam_nk
        dual.append(DualState(Observation(lam, ranges), Observation(lam_nk, ranges),
                              Observation(mu_n, ranges), Observation(mu_nk, ranges)))
        lam = lam_nk
    return rec.finish(x, None, False, source.to_path(), dual=dual)


__all__ = [
    'DEFAULT_MAX_EPOCHS',
    'DualState',
    'SamplePath',
    'SolveTrace',
    'draw_path',
    'landweber',
    'sgd',
    'svrg',
    'svrg_classic',
    'svrg_dp',
    'svrg_dual',
]
