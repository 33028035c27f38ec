# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0
"""
Command line interface::

    svrgreg generate --problem phillips --n 1000 --out data/phillips
    svrgreg solve --method svrg --problem phillips --n 200 --delta-rel 0.01 --epochs 50 --seed 7 --out t.csv
    svrgreg ensemble config.json --out-dir results/
    svrgreg rate-check --n 200 --deltas 1e-1 1e-2 1e-3 --runs 50
    svrgreg reproduce-table --problem phillips --n 1000 --delta-rels 0.1 0.01 --runs 100 --out table.csv

Exit status is 0 on success, 2 for invalid input (one line on stderr) and 1
for any other failure.
"""

import argparse
import logging
import sys

from svrgreg.harness import (
    METHODS,
    ExperimentConfig,
    admissibility_gate,
    build_instance,
    rate_check,
    rate_frame,
    reproduce_table,
    resolve_plan,
    run_ensemble,
    run_single
)
from svrgreg.output import write_csv, write_vector
from svrgreg.problems import GRAVITY_DEPTH, PROBLEMS, save_instance, source_instance
from svrgreg.solvers import DEFAULT_MAX_EPOCHS
from svrgreg.util import DimensionError, ValidationError, get_debug, logger


class _UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_problem_args(parser, n_default=1000):
    parser.add_argument("--problem", default="phillips", choices=sorted(PROBLEMS) + ["file"],
                        help="test problem, or 'file' to read --instance")
    parser.add_argument("--n", type=int, default=n_default, help="number of blocks (discretization size)")
    parser.add_argument("--depth", type=float, default=GRAVITY_DEPTH, help="gravity source depth")
    parser.add_argument("--instance", metavar="PREFIX", help="instance written by 'generate'")


def make_parser():
    parser = ArgumentParser(prog="svrgreg", description="SVRG iterative regularization for linear ill-posed problems")
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=ArgumentParser)
    subparsers.required = True

    p = subparsers.add_parser("generate", help="write a discretized test problem")
    _add_problem_args(p)
    p.add_argument("--source-seed", type=int, help="replace x_true by a seeded source-condition solution")
    p.add_argument("--out", metavar="PREFIX", required=True)

    p = subparsers.add_parser("solve", help="run one solver and write its per-epoch trace")
    _add_problem_args(p)
    p.add_argument("--method", default="svrg", choices=METHODS.keys())
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.99)
    p.add_argument("--m-frac", type=float, default=0.1, help="m = round(m_frac * N)")
    p.add_argument("--gamma", type=float, help="step size of landweber, sgd and svrg-classic")
    p.add_argument("--gamma0", type=float, help="override the snapshot step size")
    p.add_argument("--gamma1", type=float, help="override the inner step size")
    p.add_argument("--tau", type=float, default=1.01)
    p.add_argument("--epochs", type=int)
    p.add_argument("--max-epochs", type=int, default=DEFAULT_MAX_EPOCHS)
    p.add_argument("--stop-rule", help="apriori:c[:p] or dp:tau")
    p.add_argument("--delta-rel", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help="run inadmissible step sizes")
    p.add_argument("--out", required=True, help="trace CSV")
    p.add_argument("--store-iterates", metavar="PATH", help="also write the final iterate")

    p = subparsers.add_parser("ensemble", help="run a seeded ensemble from a JSON config")
    p.add_argument("config", help="JSON file with ExperimentConfig fields")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int)

    p = subparsers.add_parser("rate-check", help="fit the convergence rate under the a priori rule")
    _add_problem_args(p, n_default=200)
    p.add_argument("--deltas", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3])
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--source-seed", type=int, default=0)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="per-delta CSV")

    p = subparsers.add_parser("reproduce-table", help="Landweber vs SVRG under the discrepancy principle")
    p.add_argument("--n", type=int, nargs="+", default=[1000], help="one or more block counts")
    p.add_argument("--depth", type=float, default=GRAVITY_DEPTH)
    p.add_argument("--delta-rels", type=float, nargs="+", default=[1e-1, 1e-2, 1e-3])
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-epochs", type=int, default=DEFAULT_MAX_EPOCHS)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="table CSV")
    return parser


def _generate(args):
    cfg = ExperimentConfig(problem=args.problem, n=args.n, depth=args.depth, instance=args.instance, epochs=0)
    instance = build_instance(cfg)
    if args.source_seed is not None:
        instance = source_instance(instance, args.source_seed)
    save_instance(instance, args.out, cfg.to_dict(), source_seed=args.source_seed)
    logger.info("wrote instance %s to %s", instance.name, args.out)
    return 0


def _solve(args):
    cfg = ExperimentConfig(
        problem=args.problem, n=args.n, depth=args.depth, instance=args.instance, method=args.method,
        alpha=args.alpha, beta=args.beta, m_frac=args.m_frac, gamma=args.gamma, gamma0=args.gamma0,
        gamma1=args.gamma1, tau=args.tau, epochs=args.epochs, max_epochs=args.max_epochs,
        stop_rule=args.stop_rule, delta_rel=args.delta_rel, n_runs=1, base_seed=args.seed, force=args.force)
    instance = build_instance(cfg)
    with admissibility_gate(instance.operator, cfg):
        record, trace = run_single(cfg, instance, store_iterates=False)
    fields = dict(instance=dict(instance.meta), noise_seed=record.noise_seed, path_seed=record.path_seed,
                  delta=record.delta, stop_index=record.stop_index, terminated=record.terminated)
    if cfg.method in ('svrg', 'svrg-dp', 'svrg-classic'):
        fields['plan'] = resolve_plan(instance.operator, cfg).to_dict()
    write_csv(trace.to_frame(), args.out, cfg.to_dict(), **fields)
    if args.store_iterates:
        write_vector(trace.x_final, args.store_iterates, cfg.to_dict(), **fields)
    summary = f"{cfg.method}: {trace.epochs} epochs, residual {trace.residual_norms[-1]:.6g}"
    if trace.errors is not None:
        summary += f", relative error^2 {trace.errors[-1]:.6g}"
    if record.stop_index is not None:
        summary += f", stopped at {record.stop_index}"
    print(summary)
    return 0


def _ensemble(args):
    cfg = ExperimentConfig.from_json(args.config)
    result = run_ensemble(cfg, out_dir=args.out_dir, workers=args.workers)
    stats = result.stats
    if stats.stop_index is not None:
        print(f"stop index: mean {stats.stop_index.mean:.6g}, median {stats.stop_index.median:.6g}")
    if stats.final_error is not None:
        print(f"final relative error^2: mean {stats.final_error.mean:.6g}, median {stats.final_error.median:.6g}")
    return 0


def _rate_check(args):
    cfg = ExperimentConfig(problem=args.problem, n=args.n, depth=args.depth, instance=args.instance, epochs=0)
    instance = source_instance(build_instance(cfg), args.source_seed)
    result = rate_check(instance, args.deltas, c=args.c, n_runs=args.runs, base_seed=args.seed,
                        workers=args.workers)
    frame = rate_frame(result)
    print(frame.to_string(index=False))
    print(f"slope {result.slope:.4f}")
    if args.out:
        write_csv(frame, args.out, dict(vars(args)), slope=result.slope, intercept=result.intercept)
    return 0


def _reproduce_table(args):
    frame = reproduce_table(args.problem, args.n, args.delta_rels, n_runs=args.runs, base_seed=args.seed,
                            max_epochs=args.max_epochs, workers=args.workers, depth=args.depth)
    print(frame.to_string(index=False))
    if args.out:
        write_csv(frame, args.out, dict(vars(args)))
    return 0


COMMANDS = {
    "generate": _generate,
    "solve": _solve,
    "ensemble": _ensemble,
    "rate-check": _rate_check,
    "reproduce-table": _reproduce_table,
}


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"svrgreg: error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        return e.code
    level = logging.DEBUG if get_debug() else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, DimensionError, OSError) as e:
        print(f"svrgreg: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        logger.exception("%s failed", args.command)
        print(f"svrgreg: error: {e}", file=sys.stderr)
        return 1


__all__ = [
    'main',
    'make_parser',
]
