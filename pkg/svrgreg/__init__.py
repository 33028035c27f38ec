# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

from svrgreg.harness import ExperimentConfig, rate_check, reproduce_table, run_ensemble, summarize_boxplot
from svrgreg.linop import BlockOperator, Observation
from svrgreg.noise import NoisyObservation, add_noise, add_relative_noise
from svrgreg.problems import ProblemInstance, make_problem
from svrgreg.solvers import SamplePath, SolveTrace, landweber, sgd, svrg, svrg_classic, svrg_dp, svrg_dual
from svrgreg.stepsize import StepSizePlan, plan_from_alpha_beta, plan_from_gammas
from svrgreg.util import VERSION, AdmissibilityWarning, DimensionError, ValidationError

from . import (
    cli,
    harness,
    linop,
    noise,
    output,
    problems,
    registry,
    solvers,
    stepsize,
    stopping,
    testing,
    util,
)

__version__ = VERSION

__all__ = [
    'AdmissibilityWarning',
    'BlockOperator',
    'DimensionError',
    'ExperimentConfig',
    'NoisyObservation',
    'Observation',
    'ProblemInstance',
    'SamplePath',
    'SolveTrace',
    'StepSizePlan',
    'ValidationError',
    'add_noise',
    'add_relative_noise',
    'cli',
    'harness',
    'landweber',
    'linop',
    'make_problem',
    'noise',
    'output',
    'plan_from_alpha_beta',
    'plan_from_gammas',
    'problems',
    'rate_check',
    'registry',
    'reproduce_table',
    'run_ensemble',
    'sgd',
    'solvers',
    'stepsize',
    'stopping',
    'summarize_boxplot',
    'svrg',
    'svrg_classic',
    'svrg_dp',
    'svrg_dual',
    'testing',
    'util',
]
