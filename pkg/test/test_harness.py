# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import gc
import json
import os
import weakref

import numpy as np
import pytest

from svrgreg import harness
from svrgreg.harness import (
    METHODS,
    ExperimentConfig,
    aggregate,
    rate_check,
    reproduce_table,
    run_ensemble,
    run_seeds,
    run_single,
    summarize_boxplot
)
from svrgreg.linop import Observation
from svrgreg.output import read_csv, read_metadata
from svrgreg.problems import phillips, source_instance, synthetic_source_instance
from svrgreg.stepsize import m_from_frac, plan_from_alpha_beta, stability_constant_C0
from svrgreg.stopping import RATE_OPTIMAL, AprioriRule, apriori_index
from svrgreg.util import ValidationError


@pytest.fixture(scope="module")
def small_instance():
    return phillips(60)


def test_boxplot_simple():
    box = summarize_boxplot([1, 2, 3, 4, 5])
    assert (box.q25, box.median, box.q75) == (2., 3., 4.)
    assert box.outliers == ()
    assert (box.whisker_low, box.whisker_high) == (1., 5.)
    assert box.count == 5
    assert box.mean == 3.


def test_boxplot_constant():
    box = summarize_boxplot([7.] * 10)
    assert box.q25 == box.median == box.q75 == box.whisker_low == box.whisker_high == box.mean == 7.
    assert box.outliers == ()


def test_boxplot_outlier():
    box = summarize_boxplot(list(range(1, 100)) + [1000])
    assert box.q25 == pytest.approx(25.75)
    assert box.q75 == pytest.approx(75.25)
    assert box.outliers == (1000.,)
    assert box.whisker_high == 99.
    assert box.whisker_low == 1.


def test_boxplot_invariants():
    values = np.random.standard_cauchy(200)
    box = summarize_boxplot(values)
    iqr = box.q75 - box.q25
    assert box.q25 <= box.median <= box.q75
    assert box.whisker_low >= box.q25 - 1.5 * iqr
    assert box.whisker_high <= box.q75 + 1.5 * iqr
    flagged = [v for v in values if v < box.q25 - 1.5 * iqr or v > box.q75 + 1.5 * iqr]
    assert sorted(flagged) == list(box.outliers)


def test_boxplot_empty():
    with pytest.raises(ValidationError):
        summarize_boxplot([])


def test_run_seeds():
    assert run_seeds(0, 3) == run_seeds(3, 0)
    noise, path = run_seeds(0, 0)
    assert noise != path
    assert len({run_seeds(0, r) for r in range(50)}) == 50


@pytest.mark.parametrize('kwargs,match', [
    (dict(colour='red'), 'unknown config fields'),
    (dict(method='cg', epochs=3), 'unknown method'),
    (dict(problem='heat', epochs=3), 'unknown problem'),
    (dict(problem='file', epochs=3), 'instance'),
    (dict(n_runs=0, epochs=3), 'n_runs'),
    (dict(method='svrg-dp', tau=1.), 'tau > 1'),
    (dict(method='svrg'), 'epochs'),
    (dict(alpha=2., epochs=3), 'alpha'),
    (dict(delta_rel=-1., epochs=3), 'delta_rel'),
    (dict(stop_rule='dp:0.9'), 'tau > 1'),
    (dict(base_seed=2 ** 64, epochs=3), 'base_seed'),
    (dict(base_seed=True, epochs=3), 'base_seed'),
    (dict(fixed_noise_seed=-1, epochs=3), 'fixed_noise_seed'),
])
def test_config_validation(kwargs, match):
    with pytest.raises(ValidationError, match=match):
        ExperimentConfig(**kwargs)


def test_config_json(tmpdir):
    path = str(tmpdir.join("config.json"))
    with open(path, "w") as f:
        json.dump({"problem": "shaw", "n": 40, "method": "svrg-dp", "n_runs": 5, "delta_rel": 0.05}, f)
    cfg = ExperimentConfig.from_json(path)
    assert cfg.problem == 'shaw'
    assert cfg.alpha == 1.0
    assert cfg.max_epochs == 100000
    assert ExperimentConfig(**cfg.to_dict()) == cfg
    assert cfg.replace(n_runs=7).n_runs == 7


def test_landweber_fixed_noise_identical_runs(small_instance):
    cfg = ExperimentConfig(problem='phillips', n=60, method='landweber', epochs=20, n_runs=3, fixed_noise_seed=42)
    result = run_ensemble(cfg, small_instance)
    first = result.curves['error_sq'][0]
    for row in result.curves['error_sq'][1:]:
        assert (row == first).all()
    assert (result.stats.q25 == result.stats.q75).all()
    assert result.stats.final_error.q25 == result.stats.final_error.q75
    assert len({r.noise_seed for r in result.runs}) == 1


def test_single_run_ensemble(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg', epochs=10, n_runs=1, base_seed=5)
    result = run_ensemble(cfg, small_instance)
    _, trace = run_single(cfg, small_instance, 0)
    assert (result.stats.mean_error == trace.errors).all()
    assert (result.stats.median == trace.errors).all()
    assert result.stats.final_error.mean == trace.errors[-1]
    assert result.runs[0].seed == 5


def test_varying_noise_and_path(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg', epochs=3, n_runs=4)
    result = run_ensemble(cfg, small_instance)
    assert len({r.noise_seed for r in result.runs}) == 4
    assert len({r.path_seed for r in result.runs}) == 4
    assert len({r.delta for r in result.runs}) == 4


def test_aggregate_order_independent(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg-dp', delta_rel=0.05, n_runs=6)
    results = [run_single(cfg, small_instance, r) for r in range(6)]
    runs = [record for record, _ in results]
    traces = [trace for _, trace in results]
    stats, curves = aggregate(runs, traces)
    shuffled, _ = aggregate(runs[::-1], traces[::-1])
    assert (stats.mean_error == shuffled.mean_error).all()
    assert (stats.q75 == shuffled.q75).all()
    assert stats.stop_index == shuffled.stop_index
    assert stats.final_error == shuffled.final_error


def test_dp_curves_padded(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg-dp', delta_rel=0.05, n_runs=5)
    result = run_ensemble(cfg, small_instance)
    errors = result.curves['error_sq']
    assert errors.shape[1] == max(r.stop_index for r in result.runs) + 1
    for record, row in zip(result.runs, errors):
        assert (row[record.stop_index:] == record.final_error_sq).all()
    assert all(r.terminated for r in result.runs)


def test_workers_match_sequential(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg', epochs=5, n_runs=6)
    a = run_ensemble(cfg, small_instance, workers=1)
    b = run_ensemble(cfg, small_instance, workers=3)
    assert (a.stats.mean_error == b.stats.mean_error).all()
    assert [r.stop_index for r in a.runs] == [r.stop_index for r in b.runs]
    assert [r.final_error_sq for r in a.runs] == [r.final_error_sq for r in b.runs]


def test_ensemble_files_reproducible(small_instance, tmpdir):
    cfg = ExperimentConfig(n=60, method='svrg-dp', delta_rel=0.05, n_runs=4)
    first, second = str(tmpdir.join("a")), str(tmpdir.join("b"))
    run_ensemble(cfg, small_instance, out_dir=first)
    run_ensemble(cfg, small_instance, out_dir=second)
    for name in ["epochs.csv", "boxplot.csv"]:
        with open(os.path.join(first, name)) as f, open(os.path.join(second, name)) as g:
            assert f.read() == g.read()
    runs = read_csv(os.path.join(first, "runs.csv"))
    assert list(runs.columns[:5]) == ['run_id', 'seed', 'noise_seed', 'path_seed', 'delta']
    assert len(runs) == 4
    epochs = read_csv(os.path.join(first, "epochs.csv"))
    assert {'epoch', 'mean_error_sq', 'q25', 'median', 'q75'} <= set(epochs.columns)
    boxplot = read_csv(os.path.join(first, "boxplot.csv"))
    assert list(boxplot['quantity']) == ['stop_index', 'final_relative_error_sq']
    metadata = read_metadata(os.path.join(first, "epochs.csv"))
    assert metadata['config']['n_runs'] == 4
    assert metadata['quantiles'] == 'linear'


def test_inadmissible_requires_force(small_instance):
    cfg = ExperimentConfig(n=60, method='svrg', epochs=2, n_runs=1, gamma1=10.)
    with pytest.raises(ValidationError, match="inadmissible"):
        run_ensemble(cfg, small_instance)
    result = run_ensemble(cfg.replace(force=True), small_instance)
    assert len(result.runs) == 1


def test_methods_registry(small_instance):
    assert METHODS.keys() == ['landweber', 'sgd', 'svrg-classic', 'svrg', 'svrg-dp']
    cfg = ExperimentConfig(n=60, method='sgd', epochs=2)
    with pytest.raises(ValidationError, match="unknown method"):
        METHODS['cg']
    with pytest.raises(NotImplementedError):
        METHODS('sgd', small_instance.operator, small_instance.y_exact.data, cfg=cfg, seed=0,
                x0=np.zeros(60), x_true=None, store_iterates=False)
    trace = METHODS('sgd', small_instance.operator, Observation(small_instance.y_exact.data), cfg=cfg, seed=0,
                    x0=np.zeros(60), x_true=None, store_iterates=False)
    assert trace.method == 'sgd'


@pytest.mark.parametrize('method,extra', [
    ('landweber', dict(stop_rule='dp:1.1')),
    ('sgd', dict(stop_rule='apriori:1')),
    ('svrg-classic', dict(epochs=4)),
    ('svrg', dict(stop_rule='dp:1.5')),
])
def test_methods_with_stop_rules(small_instance, method, extra):
    cfg = ExperimentConfig(n=60, method=method, delta_rel=0.05, n_runs=2, max_epochs=2000, **extra)
    result = run_ensemble(cfg, small_instance)
    if 'stop_rule' in extra:
        assert all(r.stop_index is not None for r in result.runs)
    if extra.get('stop_rule') == 'apriori:1':
        for r in result.runs:
            assert r.stop_index == apriori_index(AprioriRule(RATE_OPTIMAL, 1.), r.delta)


@pytest.mark.parametrize('deltas,match', [
    ([0.1, 0.01], 'at least 3'),
    ([0.1, 0.1, 0.01], 'decreasing'),
    ([0.1, 0.01, 0.], '> 0'),
])
def test_rate_check_validation(small_instance, deltas, match):
    with pytest.raises(ValidationError, match=match):
        rate_check(source_instance(small_instance, 0), deltas)


def test_rate_check_small():
    instance = source_instance(phillips(100), seed=0)
    result = rate_check(instance, [1e-1, 1e-2, 1e-3], n_runs=10)
    assert result.stop_indices == [10, 100, 1000]
    assert all(a > b for a, b in zip(result.mean_errors, result.mean_errors[1:]))
    assert 0.5 <= result.slope <= 1.5


def test_reproduce_table_rows():
    frame = reproduce_table('phillips', 50, [0.1], n_runs=2)
    assert list(frame['method']) == ['landweber', 'svrg m=N', 'svrg m=0.1N']
    assert list(frame.columns) == ['N', 'delta_rel', 'method', 'iteration', 'terminated', 'time_s',
                                   'relative_error_sq', 'relative_error']
    assert (frame['terminated'] == 2).all()
    assert (frame['relative_error'] ** 2 <= frame['relative_error_sq'] * (1 + 1e-12) + 1e-300).all()


def test_semi_convergence_small():
    cfg = ExperimentConfig(problem='phillips', n=200, method='svrg', delta_rel=0.1, epochs=200, n_runs=10)
    mean_error = run_ensemble(cfg).stats.mean_error
    best = int(np.argmin(mean_error))
    assert 0 < best < len(mean_error) - 1
    assert mean_error[-1] > 1.1 * mean_error[best]


def test_rate_check_starts_from_initial_guess(small_instance):
    operator = small_instance.operator
    x0 = np.random.RandomState(3).randn(operator.dim)
    instance = synthetic_source_instance(operator, Observation.zeros(operator.block_ranges), x0)
    deltas = [1e-1, 1e-2, 1e-3]
    result = rate_check(instance, deltas, n_runs=5)
    plan = plan_from_alpha_beta(1., .99, operator.operator_norm(), operator.max_block_norm(),
                                m_from_frac(.1, operator.num_blocks), operator.num_blocks)
    C0 = stability_constant_C0(plan)
    # x_true = x0 and exact data is a fixed point, so only the noise moves the iterates
    for delta, n_delta, error in zip(deltas, result.stop_indices, result.mean_errors):
        assert error <= 3 * C0 * n_delta * delta ** 2
        assert error < 1e-2 * float(x0 @ x0)


def test_run_single_starts_from_initial_guess(small_instance):
    operator = small_instance.operator
    x0 = np.random.RandomState(4).randn(operator.dim)
    instance = synthetic_source_instance(operator, Observation.zeros(operator.block_ranges), x0)
    cfg = ExperimentConfig(n=60, method='svrg', delta_rel=0., epochs=3, n_runs=1)
    _, trace = run_single(cfg, instance, 0)
    assert trace.errors[0] == 0.
    assert np.allclose(trace.x_final, x0)


def test_ensemble_releases_traces(small_instance, monkeypatch):
    refs = []

    def run_single_and_check(*args, **kwargs):
        gc.collect()
        assert all(ref() is None for ref in refs)
        record, trace = run_single(*args, **kwargs)
        refs.append(weakref.ref(trace))
        return record, trace

    monkeypatch.setattr(harness, 'run_single', run_single_and_check)
    cfg = ExperimentConfig(n=60, method='svrg', epochs=3, n_runs=4)
    result = run_ensemble(cfg, small_instance, workers=1)
    assert len(refs) == 4
    assert result.curves['error_sq'].shape == (4, 4)


def test_reproduce_table_several_sizes():
    frame = reproduce_table('phillips', [30, 40], [0.1], n_runs=2)
    assert list(frame['N']) == [30, 30, 30, 40, 40, 40]
    assert list(frame['method']) == ['landweber', 'svrg m=N', 'svrg m=0.1N'] * 2
    single = reproduce_table('phillips', 30, [0.1], n_runs=2)
    assert list(single['iteration']) == list(frame['iteration'][:3])


def test_reproduce_table_needs_sizes():
    with pytest.raises(ValidationError, match='block count'):
        reproduce_table('phillips', [], [0.1], n_runs=2)


@pytest.mark.parametrize('base_seed', [-1, 2 ** 64, 1.5])
def test_rate_check_bad_seed(small_instance, base_seed):
    with pytest.raises(ValidationError, match='base_seed'):
        rate_check(source_instance(small_instance, 0), [1e-1, 1e-2, 1e-3], n_runs=1, base_seed=base_seed)
