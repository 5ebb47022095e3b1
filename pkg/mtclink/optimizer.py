#!/usr/bin/env python
# -*- coding: utf-8 -*-
# Copyright (c) 2026 Python-mtclink developers
#
# This file is part of python-mtclink.
#
# python-mtclink is free software: you can redistribute it and/or modify it under the
# terms of the GNU General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later
# version.
#
# python-mtclink is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR
# A PARTICULAR PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with
# python-mtclink.  If not, see <http://www.gnu.org/licenses/>.

"""Constrained maximisation of throughput and energy efficiency.

Both problems maximise over the SIR threshold beta > 0 and the retransmission
cap m under P_out^(m+1) <= epsilon.  For a given m the throughput is maximal
with the constraint active; the energy efficiency is searched over the
feasible interval (0, beta*(epsilon, m)].  The integer cap is swept over
0..m_max, ties going to the smaller cap.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from mtclink.model import (LN2, constrained_threshold, energy_efficiency,
                           outage_probability, per_attempt_success, throughput,
                           threshold_from_survival, throughput_epsilon_form,
                           throughput_extreme)
from mtclink.params import DEFAULT_M_MAX, LinkPoint, ProtocolParams

LOG = logging.getLogger(__name__)

FEASIBILITY_TOLERANCE = 1e-9
# Tolerance on log(beta), hence relative on beta
BETA_RTOL = 1e-8
# Width of the log(beta) interval searched below the upper bound
LOG_SEARCH_SPAN = 60.


@dataclass(frozen=True)
class Optimum:
    """Optimal operating point.

    *constraint_residual* is epsilon - P_out^(m+1) at the optimum, non-negative
    up to `FEASIBILITY_TOLERANCE` for a feasible point.
    """

    beta_star: float
    m_star: int
    objective: float
    constraint_residual: float
    epsilon: float

    def __post_init__(self):
        if self.constraint_residual < -FEASIBILITY_TOLERANCE:
            raise ValueError("Optimum violates the quality constraint by %g"
                             % -self.constraint_residual)


def _check_m_max(m_max):
    if m_max < 1:
        raise ValueError("m_max must be at least 1, got %r" % (m_max,))


def _residual(epsilon, beta, m, net):
    return epsilon - outage_probability(beta, net) ** (m + 1)


def _maximize_log(func, lower, upper):
    """Maximise a unimodal *func* of beta on [lower, upper], searching over log(beta).

    The bounded search never evaluates the end points, so both are compared
    with the interior candidate.
    """
    res = minimize_scalar(lambda log_beta: -func(np.exp(log_beta)),
                          bounds=(np.log(lower), np.log(upper)),
                          method="bounded",
                          options={"xatol": BETA_RTOL})
    candidates = [np.exp(res.x), upper, lower]
    values = [func(beta) for beta in candidates]
    best = int(np.argmax(values))
    return candidates[best], values[best]


def beta_star(proto, net):
    """SIR threshold maximising the throughput for a given cap.

    It is the largest threshold for which the quality constraint holds, i.e.
    P_out(beta*)^(m+1) == epsilon.
    """
    return constrained_threshold(proto, net)


def throughput_by_m(epsilon, net, m_max=DEFAULT_M_MAX):
    """Throughput at beta*(epsilon, m) for every m in 0..m_max."""
    values = np.empty(m_max + 1)
    for m in range(m_max + 1):
        proto = ProtocolParams(m, epsilon)
        values[m] = throughput_epsilon_form(beta_star(proto, net), proto)
    return values


def _best_cap(epsilon, net, m_max):
    _check_m_max(m_max)
    values = throughput_by_m(epsilon, net, m_max)
    # argmax returns the first maximum, i.e. the smaller cap on ties
    m = int(np.argmax(values))
    if m == m_max:
        LOG.warning("The throughput still grows at m_max=%d for epsilon=%g, lambda=%g; "
                    "the optimal cap may be larger", m_max, epsilon, net.lambda_)
    return m, values


def m_star(epsilon, net, m_max=DEFAULT_M_MAX):
    """Retransmission cap maximising the throughput, by exhaustive sweep.

    A warning is logged when the sweep ends on m_max.
    """
    return _best_cap(epsilon, net, m_max)[0]


def optimize_throughput(epsilon, net, m_max=DEFAULT_M_MAX):
    """Solve the constrained throughput maximisation."""
    m, values = _best_cap(epsilon, net, m_max)
    beta = beta_star(ProtocolParams(m, epsilon), net)
    LOG.debug("Throughput optimum for epsilon=%g, lambda=%g: m*=%d, beta*=%g, T*=%g",
              epsilon, net.lambda_, m, beta, values[m])
    return Optimum(beta, m, values[m], _residual(epsilon, beta, m, net), epsilon)


def beta_star_ee(proto, net, pm):
    """SIR threshold maximising the energy efficiency for a given cap."""
    upper = beta_star(proto, net)
    if not upper > 0:
        raise ValueError("Empty feasible threshold interval for %r on %r" % (proto, net))

    def objective(beta):
        return energy_efficiency(LinkPoint(beta, net, proto), pm)

    beta, _ = _maximize_log(objective, upper * np.exp(-LOG_SEARCH_SPAN), upper)
    return beta


def optimize_ee(epsilon, net, pm, m_max=DEFAULT_M_MAX):
    """Solve the constrained energy-efficiency maximisation."""
    _check_m_max(m_max)
    best = None
    for m in range(m_max + 1):
        proto = ProtocolParams(m, epsilon)
        beta = beta_star_ee(proto, net, pm)
        value = energy_efficiency(LinkPoint(beta, net, proto), pm)
        LOG.debug("m=%d: beta=%g, EE=%g", m, beta, value)
        if best is None or value > best[2]:
            best = (beta, m, value)
    beta, m, value = best
    return Optimum(beta, m, value, _residual(epsilon, beta, m, net), epsilon)


# Cap standing for unbounded retransmissions
UNBOUNDED_CAP = 10 ** 4


def optimize_extreme(net):
    """Best throughput of the extreme cases, no retransmission or unbounded retransmissions.

    Both cases share the same throughput expression, maximised over beta
    without quality constraint (recorded as epsilon = 1).
    """
    # the maximum lies where the per-attempt survival exceeds exp(-alpha/2)
    upper = threshold_from_survival(np.exp(-net.alpha / 2.), net)
    beta, value = _maximize_log(lambda b: throughput_extreme(b, net),
                                upper * np.exp(-LOG_SEARCH_SPAN), upper)
    return Optimum(beta, 0, value, _residual(1., beta, 0, net), 1.)


def optimize_unbounded(net, m=UNBOUNDED_CAP):
    """Best general throughput at a large cap *m*, maximised over beta.

    The drop requirement plays no part in the general throughput, the
    protocol carries a placeholder epsilon.  As m grows the optimum tends to
    the one of `optimize_extreme`.
    """
    proto = ProtocolParams(m, 0.5)
    upper = threshold_from_survival(np.exp(-net.alpha / 2.), net)
    beta, value = _maximize_log(lambda b: throughput(LinkPoint(b, net, proto)),
                                upper * np.exp(-LOG_SEARCH_SPAN), upper)
    return Optimum(beta, m, value, _residual(1., beta, m, net), 1.)


def mast_derivative_diagnostic(epsilon, m, net, as_printed=False):
    """Derivative in m of the throughput at beta*(epsilon, m), in bits/s/Hz.

    *m* is taken as a real number (scalar or array, m >= 0) and the
    derivative is the one of the swept objective, `throughput_epsilon_form`
    at `beta_star`, with the same *as_printed* switch.  The continuous
    maximum lies between two integers, so at the swept m* the sign may be
    either; the derivative is positive at m* - 1 and negative at m* + 1.

    >>> from mtclink.params import NetworkParams
    >>> net = NetworkParams(0.01)
    >>> bool(mast_derivative_diagnostic(0.001, 5, net) > 0)
    True
    >>> bool(mast_derivative_diagnostic(0.001, 7, net) < 0)
    True
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1), got %r" % (epsilon,))
    m = np.asarray(m, dtype=float)
    if np.any(m < 0):
        raise ValueError("m must be non-negative")
    m1 = m + 1.
    log_eps = np.log(epsilon)
    root = np.exp(log_eps / m1)
    root_success = per_attempt_success(epsilon, m)
    bstar = threshold_from_survival(root_success, net)

    d_root_success = root * log_eps / m1 ** 2
    denom = 1 - epsilon - epsilon * root_success * m1
    d_denom = -epsilon * (d_root_success * m1 + root_success)
    if as_printed:
        success = 1 - epsilon ** m1
        d_success = -epsilon ** m1 * log_eps
    else:
        success = 1 - epsilon
        d_success = 0.
    factor = (1 - epsilon) * root_success * success / denom
    d_factor = (1 - epsilon) * (d_root_success * success * denom + root_success * d_success * denom
                                - root_success * success * d_denom) / denom ** 2

    # beta* = ratio (-ln(root_success) / (k lambda))^(alpha/2)
    d_bstar = (net.alpha / 2.) * bstar * (-d_root_success / root_success) / -np.log(root_success)
    rate = np.log1p(bstar) / LN2
    d_rate = d_bstar / ((1 + bstar) * LN2)
    return (d_rate * factor + rate * d_factor)[()]
