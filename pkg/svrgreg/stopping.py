# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

from collections import namedtuple

from svrgreg.util import ValidationError, logger, round_half_up

RATE_OPTIMAL = 'rate_optimal'
GENERAL = 'general'


class AprioriRule(namedtuple('AprioriRule', ['kind', 'c', 'p'])):
    """
    An a priori stopping rule ``n_delta = round(c * delta^(-p))``.
    The rate optimal rule fixes ``p = 1``; the general rule requires
    ``0 < p < 2`` so that ``n_delta -> infinity`` and ``delta^2 n_delta -> 0``.
    """
    def __new__(cls, kind=RATE_OPTIMAL, c=1.0, p=None):
        if kind not in (RATE_OPTIMAL, GENERAL):
            raise ValidationError(f"unknown a priori rule kind {kind!r}")
        if not c > 0:
            raise ValidationError(f"c must be > 0, got {c}")
        if kind == RATE_OPTIMAL:
            if p not in (None, 1, 1.0):
                raise ValidationError(f"the rate optimal rule uses p = 1, got {p}")
            p = 1.0
        elif p is None or not 0 < p < 2:
            raise ValidationError(f"the general rule requires 0 < p < 2, got {p}")
        return super(AprioriRule, cls).__new__(cls, kind, float(c), float(p))


class DiscrepancyRule(namedtuple('DiscrepancyRule', ['tau'])):
    def __new__(cls, tau):
        if not tau > 1:
            raise ValidationError(f"the discrepancy principle requires tau > 1, got {tau}")
        return super(DiscrepancyRule, cls).__new__(cls, float(tau))


def apriori_index(rule, delta):
    """
    Stopping index of an :class:`AprioriRule` for noise level ``delta``,
    never smaller than 1.

    :raises: ValidationError if ``delta <= 0``.
    """
    if not delta > 0:
        raise ValidationError(f"a priori stopping needs a positive noise level, got delta={delta}")
    return max(1, round_half_up(rule.c * delta ** -rule.p))


class Discrepancy(object):
    """
    Discrepancy principle monitor: stops at the first epoch whose residual
    satisfies ``||A x_n - y^delta|| <= tau * delta``.
    """
    def __init__(self, tau, delta):
        self.rule = DiscrepancyRule(tau)
        self.tau = self.rule.tau
        self.delta = float(delta)
        self.threshold = self.tau * self.delta

    def __repr__(self):
        return 'Discrepancy(tau={}, delta={})'.format(self.tau, self.delta)

    def __call__(self, epoch, x, residual_norm):
        stop = residual_norm <= self.threshold
        if stop:
            logger.debug("discrepancy principle met at epoch %d: %g <= %g", epoch, residual_norm, self.threshold)
        return stop


class FixedEpochs(object):
    """
    Stops once ``n`` epochs have been performed.
    """
    def __init__(self, n):
        if int(n) != n or n < 0:
            raise ValidationError(f"number of epochs must be a nonnegative integer, got {n}")
        self.n = int(n)

    def __repr__(self):
        return 'FixedEpochs({})'.format(self.n)

    def __call__(self, epoch, x, residual_norm):
        return epoch >= self.n


def parse_stop_rule(text):
    """
    Parses ``apriori:c``, ``apriori:c:p`` or ``dp:tau``.

    :rtype: AprioriRule or DiscrepancyRule
    """
    parts = text.split(":")
    try:
        if parts[0] == "apriori" and len(parts) == 2:
            return AprioriRule(RATE_OPTIMAL, float(parts[1]))
        if parts[0] == "apriori" and len(parts) == 3:
            return AprioriRule(GENERAL, float(parts[1]), float(parts[2]))
        if parts[0] == "dp" and len(parts) == 2:
            return DiscrepancyRule(float(parts[1]))
    except ValueError as e:
        if isinstance(e, ValidationError):
            raise
        raise ValidationError(f"malformed stop rule {text!r}: {e}")
    raise ValidationError(f"malformed stop rule {text!r}, expected apriori:c[:p] or dp:tau")


def make_monitor(rule, delta):
    """
    Turns a parsed stop rule into a solver monitor for noise level ``delta``.
    """
    if isinstance(rule, DiscrepancyRule):
        return Discrepancy(rule.tau, delta)
    return FixedEpochs(apriori_index(rule, delta))


__all__ = [
    'AprioriRule',
    'Discrepancy',
    'DiscrepancyRule',
    'FixedEpochs',
    'apriori_index',
    'make_monitor',
    'parse_stop_rule',
]
