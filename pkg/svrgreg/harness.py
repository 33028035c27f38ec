# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0
"""
Seeded Monte Carlo experiments. Run ``r`` of an ensemble derives two
independent seeds, one for the noise and one for the sample path, from
``base_seed + r``; per-epoch and boxplot statistics are folded in run order
so results do not depend on how runs were scheduled.
"""

import contextlib
import json
import os
import warnings
from collections import OrderedDict, namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from svrgreg.linop import BlockOperator, Observation
from svrgreg.noise import add_noise, add_relative_noise, check_seed, noise_level
from svrgreg.output import write_csv
from svrgreg.problems import GRAVITY_DEPTH, PROBLEMS, load_instance, make_problem
from svrgreg.registry import KeyedRegistry
from svrgreg.solvers import DEFAULT_MAX_EPOCHS, landweber, sgd, svrg, svrg_classic, svrg_dp
from svrgreg.stepsize import landweber_step, m_from_frac, plan_from_alpha_beta, plan_from_gammas
from svrgreg.stopping import RATE_OPTIMAL, AprioriRule, apriori_index, make_monitor, parse_stop_rule
from svrgreg.util import AdmissibilityWarning, DimensionError, ValidationError, get_default_workers, logger

_DEFAULTS = OrderedDict([
    ('problem', 'phillips'),
    ('n', 1000),
    ('depth', GRAVITY_DEPTH),
    ('instance', None),
    ('method', 'svrg'),
    ('alpha', 1.0),
    ('beta', 0.99),
    ('m_frac', 0.1),
    ('gamma', None),
    ('gamma0', None),
    ('gamma1', None),
    ('tau', 1.01),
    ('epochs', None),
    ('max_epochs', DEFAULT_MAX_EPOCHS),
    ('stop_rule', None),
    ('delta_rel', 0.01),
    ('n_runs', 100),
    ('base_seed', 0),
    ('fixed_noise_seed', None),
    ('workers', None),
    ('force', False),
])


def _check_int(name, value, lower):
    if isinstance(value, bool) or int(value) != value or value < lower:
        raise ValidationError(f"{name} must be an integer >= {lower}, got {value}")
    return int(value)


class ExperimentConfig(namedtuple('ExperimentConfig', list(_DEFAULTS))):
    """
    Immutable description of one experiment: problem, method and its
    parameters, noise level, ensemble size and seeds. Unset fields take the
    package defaults.

    Run ``r`` uses ``seed = base_seed + r``.
    """
    def __new__(cls, **kwargs):
        unknown = set(kwargs) - set(_DEFAULTS)
        if unknown:
            raise ValidationError(f"unknown config fields: {', '.join(sorted(unknown))}")
        values = OrderedDict(_DEFAULTS)
        values.update(kwargs)

        if values['problem'] == 'file':
            if not values['instance']:
                raise ValidationError("problem 'file' requires an instance prefix")
        elif values['problem'] not in PROBLEMS:
            raise ValidationError(f"unknown problem {values['problem']!r}, "
                                  f"expected one of {sorted(PROBLEMS) + ['file']}")
        else:
            values['n'] = _check_int('n', values['n'], 2)
        if values['method'] not in METHODS:
            raise ValidationError(f"unknown method {values['method']!r}, expected one of {METHODS.keys()}")
        if not 0 < values['alpha'] < 2:
            raise ValidationError(f"alpha must satisfy 0 < alpha < 2, got {values['alpha']}")
        if not 0 < values['beta'] < 1:
            raise ValidationError(f"beta must satisfy 0 < beta < 1, got {values['beta']}")
        if not values['m_frac'] > 0:
            raise ValidationError(f"m_frac must be > 0, got {values['m_frac']}")
        for name in ('gamma', 'gamma0', 'gamma1'):
            if values[name] is not None and not values[name] > 0:
                raise ValidationError(f"{name} must be > 0, got {values[name]}")
        if values['method'] == 'svrg-dp' and not values['tau'] > 1:
            raise ValidationError(f"the discrepancy principle requires tau > 1, got {values['tau']}")
        if not values['delta_rel'] >= 0:
            raise ValidationError(f"delta_rel must be >= 0, got {values['delta_rel']}")
        values['n_runs'] = _check_int('n_runs', values['n_runs'], 1)
        values['base_seed'] = check_seed(values['base_seed'], 'base_seed')
        values['max_epochs'] = _check_int('max_epochs', values['max_epochs'], 1)
        if values['fixed_noise_seed'] is not None:
            values['fixed_noise_seed'] = check_seed(values['fixed_noise_seed'], 'fixed_noise_seed')
        if values['workers'] is not None:
            values['workers'] = _check_int('workers', values['workers'], 1)
        if values['stop_rule'] is not None:
            parse_stop_rule(values['stop_rule'])
        if values['epochs'] is not None:
            values['epochs'] = _check_int('epochs', values['epochs'], 0)
        elif values['method'] != 'svrg-dp' and values['stop_rule'] is None:
            raise ValidationError(f"method {values['method']!r} needs epochs or a stop rule")
        return super(ExperimentConfig, cls).__new__(cls, **values)

    @classmethod
    def from_json(cls, path):
        with open(path) as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ValidationError(f"{path} must contain a JSON object")
        return cls(**data)

    def to_dict(self):
        return dict(self._asdict())

    def replace(self, **kwargs):
        values = self.to_dict()
        values.update(kwargs)
        return ExperimentConfig(**values)

    @property
    def stop(self):
        return None if self.stop_rule is None else parse_stop_rule(self.stop_rule)


class RunRecord(namedtuple('RunRecord', [
        'run_id', 'seed', 'noise_seed', 'path_seed', 'delta', 'stop_index', 'terminated', 'epochs',
        'final_error_sq', 'final_residual', 'wall_time'])):
    """
    Summary of one run of an ensemble. ``final_error_sq`` is the squared
    relative error of the last iterate, ``None`` without a known solution.
    """
    @property
    def final_error(self):
        return None if self.final_error_sq is None else float(np.sqrt(self.final_error_sq))


class BoxplotStats(namedtuple('BoxplotStats', [
        'count', 'mean', 'median', 'q25', 'q75', 'whisker_low', 'whisker_high', 'outliers'])):
    pass


class EnsembleStats(namedtuple('EnsembleStats', [
        'epochs', 'mean_error', 'q25', 'median', 'q75', 'mean_residual', 'stop_index', 'final_error'])):
    """
    Per-epoch statistics of an ensemble and boxplot statistics of its stop
    indices and final squared relative errors. Error fields are ``None``
    without a known solution; ``stop_index`` is ``None`` when no run stopped.
    """
    pass


EnsembleResult = namedtuple('EnsembleResult', ['config', 'stats', 'runs', 'curves'])

RateCheckResult = namedtuple('RateCheckResult', ['slope', 'intercept', 'deltas', 'stop_indices', 'mean_errors'])

_Curves = namedtuple('_Curves', ['residual_norms', 'errors'])


def summarize_boxplot(values):
    """
    Boxplot statistics with quartiles by linear interpolation between
    closest ranks. Whiskers reach the most extreme data within
    ``1.5 * IQR`` of the box; everything beyond them is an outlier.

    :raises: ValidationError on empty input.
    """
    values = np.sort(np.asarray(values, dtype=np.float64).ravel())
    if values.size == 0:
        raise ValidationError("summarize_boxplot needs at least one value")
    q25, median, q75 = np.percentile(values, [25, 50, 75])
    iqr = q75 - q25
    low, high = q25 - 1.5 * iqr, q75 + 1.5 * iqr
    inside = values[(values >= low) & (values <= high)]
    outliers = values[(values < low) | (values > high)]
    return BoxplotStats(int(values.size), float(np.mean(values)), float(median), float(q25), float(q75),
                        float(inside.min()), float(inside.max()), tuple(float(v) for v in outliers))


def run_seeds(base_seed, run_id):
    """
    Independent ``(noise_seed, path_seed)`` sub-streams for run ``run_id``.
    """
    state = np.random.SeedSequence(base_seed + run_id).generate_state(2, dtype=np.uint64)
    return int(state[0]), int(state[1])


def build_instance(cfg):
    if cfg.problem == 'file':
        return load_instance(cfg.instance)
    return make_problem(cfg.problem, cfg.n, cfg.depth)


def resolve_plan(operator, cfg):
    """
    The split-step plan for ``cfg``: from ``alpha`` and ``beta`` unless
    ``gamma0`` or ``gamma1`` override them. ``c1`` is included for
    ``svrg-dp`` whenever ``gamma1 L < 1``.
    """
    N = operator.num_blocks
    m = m_from_frac(cfg.m_frac, N)
    op_norm, L = operator.operator_norm(), operator.max_block_norm()
    plan = plan_from_alpha_beta(cfg.alpha, cfg.beta, op_norm, L, m, N)
    if cfg.gamma0 is not None or cfg.gamma1 is not None:
        gamma0 = plan.gamma0 if cfg.gamma0 is None else cfg.gamma0
        gamma1 = plan.gamma1 if cfg.gamma1 is None else cfg.gamma1
        plan = plan_from_gammas(gamma0, gamma1, op_norm, L, m, N)
    if cfg.method == 'svrg-dp' and plan.gamma1 * L < 1:
        plan = plan_from_gammas(plan.gamma0, plan.gamma1, op_norm, L, m, N, tau=cfg.tau)
    return plan


def check_config_admissible(operator, cfg):
    """
    Returns whether the step sizes of ``cfg`` are admissible on ``operator``.
    Always True for methods without an admissibility condition.
    """
    if cfg.method in ('svrg', 'svrg-dp'):
        plan = resolve_plan(operator, cfg)
        return plan.admissible
    if cfg.method == 'landweber' and cfg.gamma is not None:
        return cfg.gamma <= 2 / operator.operator_norm() ** 2
    return True


@contextlib.contextmanager
def admissibility_gate(operator, cfg):
    """
    Rejects inadmissible step sizes unless ``cfg.force`` is set; forced runs
    log once and silence the per-run :class:`~svrgreg.util.AdmissibilityWarning`.
    """
    if check_config_admissible(operator, cfg):
        yield True
        return
    if not cfg.force:
        raise ValidationError(f"inadmissible step sizes for method {cfg.method!r}; use force to run anyway")
    logger.warning("running %s with inadmissible step sizes", cfg.method)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AdmissibilityWarning)
        yield False


def _monitor(cfg, y):
    rule = cfg.stop
    if rule is None:
        return None, cfg.epochs
    return make_monitor(rule, noise_level(y)), cfg.max_epochs


METHODS = KeyedRegistry('method')


@METHODS.register('landweber', BlockOperator, Observation)
def _run_landweber(operator, y, cfg, seed, x0, x_true, store_iterates):
    gamma = landweber_step(operator) if cfg.gamma is None else cfg.gamma
    monitor, epochs = _monitor(cfg, y)
    return landweber(operator, y, x0, gamma, epochs, monitor=monitor, x_true=x_true,
                     store_iterates=store_iterates)


@METHODS.register('sgd', BlockOperator, Observation)
def _run_sgd(operator, y, cfg, seed, x0, x_true, store_iterates):
    gamma = 1 / operator.max_block_norm() ** 2 if cfg.gamma is None else cfg.gamma
    monitor, epochs = _monitor(cfg, y)
    return sgd(operator, y, x0, gamma, epochs, seed=seed, monitor=monitor, x_true=x_true,
               store_iterates=store_iterates)


@METHODS.register('svrg-classic', BlockOperator, Observation)
def _run_svrg_classic(operator, y, cfg, seed, x0, x_true, store_iterates):
    plan = resolve_plan(operator, cfg)
    gamma = plan.gamma1 if cfg.gamma is None else cfg.gamma
    monitor, epochs = _monitor(cfg, y)
    return svrg_classic(operator, y, x0, plan.m, gamma, epochs, seed=seed, monitor=monitor, x_true=x_true,
                        store_iterates=store_iterates)


@METHODS.register('svrg', BlockOperator, Observation)
def _run_svrg(operator, y, cfg, seed, x0, x_true, store_iterates):
    plan = resolve_plan(operator, cfg)
    monitor, epochs = _monitor(cfg, y)
    return svrg(operator, y, x0, plan.m, plan.gamma0, plan.gamma1, epochs, seed=seed, monitor=monitor,
                x_true=x_true, store_iterates=store_iterates)


@METHODS.register('svrg-dp', BlockOperator, Observation)
def _run_svrg_dp(operator, y, cfg, seed, x0, x_true, store_iterates):
    plan = resolve_plan(operator, cfg)
    return svrg_dp(operator, y, x0, plan.m, plan.gamma0, plan.gamma1, cfg.tau, max_epochs=cfg.max_epochs,
                   seed=seed, x_true=x_true, store_iterates=store_iterates)


def run_single(cfg, instance, run_id=0, store_iterates=False):
    """
    Executes run ``run_id`` of ``cfg`` on ``instance`` and returns the
    :class:`RunRecord` together with the full
    :class:`~svrgreg.solvers.SolveTrace`.
    """
    noise_seed, path_seed = run_seeds(cfg.base_seed, run_id)
    if cfg.fixed_noise_seed is not None:
        noise_seed = cfg.fixed_noise_seed
    operator = instance.operator
    y = add_relative_noise(instance.y_exact, cfg.delta_rel, noise_seed)
    x0 = instance.initial_guess()
    trace = METHODS(cfg.method, operator, y, cfg=cfg, seed=path_seed, x0=x0, x_true=instance.x_true,
                    store_iterates=store_iterates)
    record = RunRecord(run_id, cfg.base_seed + run_id, noise_seed, path_seed, y.delta, trace.stop_index,
                       trace.terminated, trace.epochs, trace.final_error, float(trace.residual_norms[-1]),
                       trace.wall_time)
    logger.debug("run %d: stop_index=%s epochs=%d", run_id, trace.stop_index, trace.epochs)
    return record, trace


def _pad(rows):
    # stopped runs keep their final value
    length = max(len(row) for row in rows)
    out = np.empty((len(rows), length))
    for r, row in enumerate(rows):
        out[r, :len(row)] = row
        out[r, len(row):] = row[-1]
    return out


def _column_stats(matrix):
    ordered = np.sort(matrix, axis=0)
    mean = ordered.mean(axis=0)
    q25, median, q75 = np.percentile(ordered, [25, 50, 75], axis=0)
    return mean, q25, median, q75


def aggregate(runs, traces):
    """
    Folds per-run results (in run order) into :class:`EnsembleStats` and the
    padded per-epoch curves. ``traces`` only need ``residual_norms`` and
    ``errors``.
    """
    residuals = _pad([t.residual_norms for t in traces])
    curves = {'residual_norm': residuals}
    mean_residual = np.sort(residuals, axis=0).mean(axis=0)
    epochs = np.arange(residuals.shape[1])
    stopped = [r.stop_index for r in runs if r.stop_index is not None]
    stop_stats = summarize_boxplot(stopped) if stopped else None
    if traces[0].errors is None:
        return EnsembleStats(epochs, None, None, None, None, mean_residual, stop_stats, None), curves
    errors = _pad([t.errors for t in traces])
    curves['error_sq'] = errors
    mean, q25, median, q75 = _column_stats(errors)
    final_stats = summarize_boxplot([r.final_error_sq for r in runs])
    return EnsembleStats(epochs, mean, q25, median, q75, mean_residual, stop_stats, final_stats), curves


def run_ensemble(cfg, instance=None, out_dir=None, workers=None):
    """
    Runs ``cfg.n_runs`` independent solves and aggregates them. With
    ``out_dir`` the files ``runs.csv``, ``epochs.csv`` and ``boxplot.csv``
    are written there.

    :raises: ValidationError naming the failing run, or for inadmissible
        step sizes without ``cfg.force``.
    """
    if instance is None:
        instance = build_instance(cfg)
    operator = instance.operator
    operator.operator_norm()
    operator.max_block_norm()
    workers = workers or cfg.workers or get_default_workers()

    def run(run_id):
        try:
            record, trace = run_single(cfg, instance, run_id)
        except (ValidationError, DimensionError) as e:
            raise ValidationError(f"run {run_id}: {e}") from e
        # only the per-epoch curves outlive the run
        return record, _Curves(trace.residual_norms, trace.errors)

    with admissibility_gate(operator, cfg):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(run, range(cfg.n_runs)))
        else:
            results = [run(r) for r in range(cfg.n_runs)]
    runs = [record for record, _ in results]
    stats, curves = aggregate(runs, [run_curves for _, run_curves in results])
    result = EnsembleResult(cfg, stats, runs, curves)
    if out_dir is not None:
        write_ensemble(result, out_dir, instance)
    return result


def runs_frame(runs, wall_time=True):
    frame = pd.DataFrame({
        'run_id': [r.run_id for r in runs],
        'seed': [r.seed for r in runs],
        'noise_seed': [str(r.noise_seed) for r in runs],
        'path_seed': [str(r.path_seed) for r in runs],
        'delta': [r.delta for r in runs],
        'stop_index': pd.array([r.stop_index for r in runs], dtype='Int64'),
        'terminated': [r.terminated for r in runs],
        'epochs': [r.epochs for r in runs],
        'final_relative_error_sq': [r.final_error_sq for r in runs],
        'final_relative_error': [r.final_error for r in runs],
        'final_residual_norm': [r.final_residual for r in runs],
    })
    if wall_time:
        frame['wall_time_s'] = [r.wall_time for r in runs]
    return frame


def epochs_frame(stats):
    columns = OrderedDict([('epoch', stats.epochs)])
    if stats.mean_error is not None:
        columns['mean_error_sq'] = stats.mean_error
        columns['q25'] = stats.q25
        columns['median'] = stats.median
        columns['q75'] = stats.q75
        columns['mean_relative_error'] = np.sqrt(stats.mean_error)
    columns['mean_residual_norm'] = stats.mean_residual
    return pd.DataFrame(columns)


def boxplot_frame(stats):
    rows = []
    for quantity, box in (('stop_index', stats.stop_index), ('final_relative_error_sq', stats.final_error)):
        if box is None:
            continue
        rows.append(OrderedDict([
            ('quantity', quantity),
            ('count', box.count),
            ('mean', box.mean),
            ('median', box.median),
            ('q25', box.q25),
            ('q75', box.q75),
            ('whisker_low', box.whisker_low),
            ('whisker_high', box.whisker_high),
            ('num_outliers', len(box.outliers)),
            ('outliers', ";".join("%.17g" % v for v in box.outliers)),
        ]))
    return pd.DataFrame(rows, columns=['quantity', 'count', 'mean', 'median', 'q25', 'q75', 'whisker_low',
                                       'whisker_high', 'num_outliers', 'outliers'])


def write_ensemble(result, out_dir, instance=None):
    cfg = result.config.to_dict()
    fields = {'instance': dict(instance.meta)} if instance is not None else {}
    write_csv(runs_frame(result.runs), os.path.join(out_dir, "runs.csv"), cfg, **fields)
    write_csv(epochs_frame(result.stats), os.path.join(out_dir, "epochs.csv"), cfg, **fields)
    write_csv(boxplot_frame(result.stats), os.path.join(out_dir, "boxplot.csv"), cfg, **fields)


def rate_check(instance, deltas, c=1.0, n_runs=50, base_seed=0, alpha=1.0, beta=0.99, m_frac=0.1, workers=None):
    """
    Empirical convergence rate under the a priori rule ``n_delta = round(c / delta)``.
    For each absolute noise level ``delta`` the mean of
    ``||x_{n_delta} - x_true||^2`` over ``n_runs`` runs is estimated, and a
    least squares line is fitted to ``log(mean error)`` against ``log(delta)``.
    Every run starts from the instance's initial guess.

    :raises: ValidationError for fewer than 3 levels, non-positive or
        non-decreasing levels, or an instance without a known solution.
    """
    deltas = [float(d) for d in deltas]
    if len(deltas) < 3:
        raise ValidationError(f"rate_check needs at least 3 noise levels, got {len(deltas)}")
    if not all(d > 0 for d in deltas):
        raise ValidationError("noise levels must be > 0")
    if not all(a > b for a, b in zip(deltas, deltas[1:])):
        raise ValidationError("noise levels must be strictly decreasing")
    if instance.x_true is None:
        raise ValidationError("rate_check needs an instance with a known solution")
    n_runs = _check_int('n_runs', n_runs, 1)
    base_seed = check_seed(base_seed, 'base_seed')
    operator = instance.operator
    N = operator.num_blocks
    plan = plan_from_alpha_beta(alpha, beta, operator.operator_norm(), operator.max_block_norm(),
                                m_from_frac(m_frac, N), N)
    rule = AprioriRule(RATE_OPTIMAL, c)
    x0 = instance.initial_guess()
    workers = workers or get_default_workers()

    def run(delta, n_delta, run_id):
        noise_seed, path_seed = run_seeds(base_seed, run_id)
        y = add_noise(instance.y_exact, delta, noise_seed)
        trace = svrg(operator, y, x0, plan.m, plan.gamma0, plan.gamma1, n_delta, seed=path_seed,
                     store_iterates=False)
        e = trace.x_final - instance.x_true
        return float(e @ e)

    stop_indices, mean_errors = [], []
    for delta in deltas:
        n_delta = apriori_index(rule, delta)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                errors = list(executor.map(lambda r: run(delta, n_delta, r), range(n_runs)))
        else:
            errors = [run(delta, n_delta, r) for r in range(n_runs)]
        stop_indices.append(n_delta)
        mean_errors.append(float(np.mean(np.sort(errors))))
        logger.info("rate check delta=%g n_delta=%d mean error %g", delta, n_delta, mean_errors[-1])
    slope, intercept = np.polyfit(np.log(deltas), np.log(mean_errors), 1)
    return RateCheckResult(float(slope), float(intercept), deltas, stop_indices, mean_errors)


def rate_frame(result):
    return pd.DataFrame({
        'delta': result.deltas,
        'n_delta': result.stop_indices,
        'mean_error_sq': result.mean_errors,
    })


TABLE_METHODS = (
    ('landweber', dict(method='landweber', stop_rule='dp:1.01')),
    ('svrg m=N', dict(method='svrg-dp', m_frac=1.0, tau=1.01)),
    ('svrg m=0.1N', dict(method='svrg-dp', m_frac=0.1, tau=1.01)),
)


def reproduce_table(problem, n, delta_rels, n_runs=100, base_seed=0, max_epochs=DEFAULT_MAX_EPOCHS, workers=None,
                    depth=GRAVITY_DEPTH):
    """
    Mean stopping index, wall time and final error of Landweber with step
    ``1 / ||A||^2`` and of SVRG with ``m = N`` and ``m = 0.1 N``
    (``alpha = 1``, ``beta = 0.99``), all from ``x0 = 0`` and stopped by the
    discrepancy principle with ``tau = 1.01``.

    ``n`` is a block count or a sequence of them; the table has one row per
    ``(N, delta_rel, method)`` in that order.
    """
    ns = [n] if isinstance(n, (int, np.integer)) else list(n)
    if not ns:
        raise ValidationError("reproduce_table needs at least one block count")
    rows = []
    for N in ns:
        instance = make_problem(problem, N, depth)
        for delta_rel in delta_rels:
            for label, overrides in TABLE_METHODS:
                cfg = ExperimentConfig(problem=problem, n=N, depth=depth, delta_rel=delta_rel, n_runs=n_runs,
                                       base_seed=base_seed, max_epochs=max_epochs, workers=workers, **overrides)
                result = run_ensemble(cfg, instance)
                stopped = [r.stop_index for r in result.runs if r.stop_index is not None]
                rows.append(OrderedDict([
                    ('N', int(N)),
                    ('delta_rel', delta_rel),
                    ('method', label),
                    ('iteration', float(np.mean(stopped)) if stopped else float('nan')),
                    ('terminated', len(stopped)),
                    ('time_s', float(np.mean([r.wall_time for r in result.runs]))),
                    ('relative_error_sq', float(np.mean([r.final_error_sq for r in result.runs]))),
                    ('relative_error', float(np.mean([r.final_error for r in result.runs]))),
                ]))
    return pd.DataFrame(rows)


__all__ = [
    'BoxplotStats',
    'EnsembleResult',
    'EnsembleStats',
    'ExperimentConfig',
    'METHODS',
    'RateCheckResult',
    'RunRecord',
    'TABLE_METHODS',
    'admissibility_gate',
    'aggregate',
    'boxplot_frame',
    'build_instance',
    'check_config_admissible',
    'epochs_frame',
    'rate_check',
    'rate_frame',
    'reproduce_table',
    'resolve_plan',
    'run_ensemble',
    'run_seeds',
    'run_single',
    'runs_frame',
    'summarize_boxplot',
    'write_ensemble',
]
