# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

import math
import warnings
from collections import namedtuple

from svrgreg.util import AdmissibilityWarning, ValidationError, logger, round_half_up


class StepSizePlan(namedtuple('StepSizePlan', [
        'gamma0', 'gamma1', 'alpha', 'beta', 'm', 'N', 'op_norm', 'L',
        'admissible', 'C0', 'tau', 'c1', 'c1_negative'])):
    """
    Step sizes ``(gamma0, gamma1)`` of the split-step SVRG iteration with the
    constants they determine.

    ``admissible`` holds iff ``1 - gamma1 L > 0`` and
    ``2 gamma0 - gamma0^2 ||A||^2 - 2 m gamma1^2 L / N > 0`` (strictly).
    ``C0`` is present only for admissible plans; ``c1`` only when the plan was
    built with ``tau``.
    """
    def to_dict(self):
        return dict(self._asdict())


def _margins(gamma0, gamma1, op_norm, L, m, N):
    return 1 - gamma1 * L, 2 * gamma0 - gamma0 ** 2 * op_norm ** 2 - 2 * m * gamma1 ** 2 * L / N


def _check_common(op_norm, L, m, N):
    if not op_norm > 0:
        raise ValidationError(f"op_norm must be > 0, got {op_norm}")
    if not L > 0:
        raise ValidationError(f"L must be > 0, got {L}")
    if int(m) != m or m < 1:
        raise ValidationError(f"m must be an integer >= 1, got {m}")
    if int(N) != N or N < 1:
        raise ValidationError(f"N must be an integer >= 1, got {N}")


def _make_plan(gamma0, gamma1, alpha, beta, m, N, op_norm, L, tau):
    first, second = _margins(gamma0, gamma1, op_norm, L, m, N)
    admissible = first > 0 and second > 0
    C0 = gamma0 ** 2 / second + m * gamma1 ** 2 / (2 * N * first) if admissible else None
    c1 = None
    c1_negative = False
    if tau is not None:
        c1 = _c1(gamma0, gamma1, op_norm, L, m, N, tau)
        c1_negative = not c1 > 0
        if c1_negative:
            logger.info("c1 = %g <= 0 for tau = %g; finite termination of the discrepancy "
                        "principle is not covered by the estimate", c1, tau)
    return StepSizePlan(float(gamma0), float(gamma1), alpha, beta, int(m), int(N), float(op_norm), float(L),
                        admissible, C0, tau, c1, c1_negative)


def plan_from_alpha_beta(alpha, beta, op_norm, L, m, N, tau=None):
    """
    Step sizes ``gamma0 = alpha / ||A||^2`` and
    ``gamma1 = beta * min(1 / L, sqrt((2 - alpha) alpha N / (2 m L)) / ||A||)``,
    which are admissible for every ``0 < alpha < 2`` and ``0 < beta < 1``.

    :raises: ValidationError naming the violated bound.
    """
    if not 0 < alpha < 2:
        raise ValidationError(f"alpha must satisfy 0 < alpha < 2, got {alpha}")
    if not 0 < beta < 1:
        raise ValidationError(f"beta must satisfy 0 < beta < 1, got {beta}")
    _check_common(op_norm, L, m, N)
    gamma0 = alpha / op_norm ** 2
    gamma1 = beta * min(1 / L, math.sqrt((2 - alpha) * alpha * N / (2 * m * L)) / op_norm)
    return _make_plan(gamma0, gamma1, float(alpha), float(beta), m, N, op_norm, L, tau)


def plan_from_gammas(gamma0, gamma1, op_norm, L, m, N, tau=None):
    """
    Wraps explicit step sizes in a plan; ``alpha`` and ``beta`` are the values
    that would reproduce them (``beta`` is ``nan`` when ``alpha`` is outside
    ``(0, 2)``).
    """
    if not gamma0 > 0:
        raise ValidationError(f"gamma0 must be > 0, got {gamma0}")
    if not gamma1 > 0:
        raise ValidationError(f"gamma1 must be > 0, got {gamma1}")
    _check_common(op_norm, L, m, N)
    alpha = gamma0 * op_norm ** 2
    if 0 < alpha < 2:
        beta = gamma1 / min(1 / L, math.sqrt((2 - alpha) * alpha * N / (2 * m * L)) / op_norm)
    else:
        beta = float('nan')
    return _make_plan(gamma0, gamma1, alpha, beta, m, N, op_norm, L, tau)


def plan_for_operator(operator, alpha=1.0, beta=0.99, m=None, tau=None):
    """
    :func:`plan_from_alpha_beta` with ``||A||`` and ``L`` estimated from
    ``operator``. ``m`` defaults to the number of blocks.
    """
    N = operator.num_blocks
    m = N if m is None else m
    return plan_from_alpha_beta(alpha, beta, operator.operator_norm(), operator.max_block_norm(), m, N, tau)


def m_from_frac(m_frac, N):
    if not m_frac > 0:
        raise ValidationError(f"m_frac must be > 0, got {m_frac}")
    return max(1, round_half_up(m_frac * N))


def stability_constant_C0(plan):
    r"""
    ``C0 = gamma0^2 / (2 gamma0 - gamma0^2 ||A||^2 - 2 m gamma1^2 L / N)
    + m gamma1^2 / (2 N (1 - gamma1 L))``, the constant in the bound
    :math:`E\|x_n^\delta - x_n\|^2 \le C_0 n \delta^2`.

    :raises: ValidationError if the plan is not admissible.
    """
    if not plan.admissible:
        raise ValidationError("C0 requires an admissible plan: need 1 - gamma1*L > 0 and "
                              "2*gamma0 - gamma0^2*||A||^2 - 2*m*gamma1^2*L/N > 0")
    first, second = _margins(plan.gamma0, plan.gamma1, plan.op_norm, plan.L, plan.m, plan.N)
    return plan.gamma0 ** 2 / second + plan.m * plan.gamma1 ** 2 / (2 * plan.N * first)


def _c1(gamma0, gamma1, op_norm, L, m, N, tau):
    if not tau > 1:
        raise ValidationError(f"tau must be > 1, got {tau}")
    if not gamma1 * L < 1:
        raise ValidationError(f"c1 requires gamma1*L < 1, got {gamma1 * L}")
    return (2 * gamma0 - 2 * gamma0 / tau - gamma0 ** 2 * op_norm ** 2 - 2 * m * gamma1 ** 2 * L / N
            - m * gamma1 / (2 * N * (1 - gamma1 * L) * tau ** 2))


def dp_constant_c1(plan, tau):
    """
    The constant ``c1`` whose positivity guarantees almost sure finite
    termination of SVRG under the discrepancy principle. It is returned even
    when negative.

    :raises: ValidationError if ``tau <= 1`` or ``gamma1 L >= 1``.
    """
    return _c1(plan.gamma0, plan.gamma1, plan.op_norm, plan.L, plan.m, plan.N, tau)


def check_admissible(plan, stacklevel=2):
    """
    Emits an :class:`AdmissibilityWarning` for an inadmissible plan and
    returns the admissibility flag.
    """
    if not plan.admissible:
        first, second = _margins(plan.gamma0, plan.gamma1, plan.op_norm, plan.L, plan.m, plan.N)
        warnings.warn(f"inadmissible step sizes gamma0={plan.gamma0:g}, gamma1={plan.gamma1:g}: "
                      f"1 - gamma1*L = {first:g}, 2*gamma0 - gamma0^2*||A||^2 - 2*m*gamma1^2*L/N = {second:g}",
                      AdmissibilityWarning, stacklevel=stacklevel + 1)
    return plan.admissible


def landweber_step(operator):
    """
    The baseline Landweber step ``1 / ||A||^2``.
    """
    return 1.0 / operator.operator_norm() ** 2


__all__ = [
    'StepSizePlan',
    'check_admissible',
    'dp_constant_c1',
    'landweber_step',
    'm_from_frac',
    'plan_for_operator',
    'plan_from_alpha_beta',
    'plan_from_gammas',
    'stability_constant_C0',
]
