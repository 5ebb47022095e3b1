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

"""Closed-form model of an interference-limited link with capped retransmissions.

A reference link of length r0 is disturbed by a Poisson field of interferers
of density lambda, with Rayleigh fading on every link and no noise.  A packet
is sent up to m + 1 times and dropped afterwards; the drop probability must
not exceed epsilon.

Spectral efficiencies are in bits/s/Hz (base 2 logarithm).  Functions taking
*beta* broadcast over numpy arrays; functions taking a `LinkPoint` or
`ProtocolParams` work on a single operating point.

The "epsilon form" of the throughput assumes the quality constraint is met
with equality, P_out ** (m + 1) == epsilon, so that the success probability is
1 - epsilon.  With ``as_printed=True`` the success factor is
(1 - epsilon ** (m + 1)) instead, the form usually quoted for this model.

    >>> from mtclink.params import NetworkParams
    >>> net = NetworkParams(0.01)
    >>> print(round(float(geometry_constant_k(net)), 6))
    4.934802
    >>> print(round(float(outage_probability(1., net)), 4))
    0.0482
"""

import warnings

import numpy as np
from scipy.special import gamma

LN2 = np.log(2.)

# Beyond this requirement the approximate attempt count is known to be loose
APPROXIMATION_EPSILON_LIMIT = 0.4


def geometry_constant_k(net):
    """Geometry constant of the outage expression, pi r0^2 G(1 - 2/a) G(1 + 2/a)."""
    two_over_alpha = 2. / net.alpha
    return np.pi * net.r0 ** 2 * gamma(1 - two_over_alpha) * gamma(1 + two_over_alpha)


def spectral_efficiency(beta):
    """Spectral efficiency log2(1 + beta) of a decoded attempt."""
    return np.log1p(beta) / LN2


def _exponent(beta, net):
    return geometry_constant_k(net) * net.lambda_ * (np.asarray(beta, dtype=np.float64) / net.power_ratio) ** (
        2. / net.alpha)


def outage_probability(beta, net):
    """Probability that one attempt is in outage, SIR <= beta.

    The threshold seen by the interference field is beta scaled down by the
    power ratio P_s / P_p.
    """
    return -np.expm1(-_exponent(beta, net))[()]


def survival_probability(beta, net):
    """Probability that one attempt is decoded, 1 - P_out."""
    return np.exp(-_exponent(beta, net))[()]


def threshold_from_survival(survival, net):
    """SIR threshold at which a single attempt succeeds with probability *survival*.

    This inverts `survival_probability`.
    """
    scaled = -np.log(survival) / (geometry_constant_k(net) * net.lambda_)
    return (net.power_ratio * scaled ** (net.alpha / 2.))[()]


def per_attempt_success(epsilon, m):
    """Per-attempt success probability 1 - epsilon^(1/(m+1)) meeting the drop requirement exactly."""
    return -np.expm1(np.log(epsilon) / (np.asarray(m) + 1.))[()]


def _check_epsilon(epsilon):
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1), got %r" % (epsilon,))


def _check_outage(p_out):
    if not 0 < p_out < 1:
        raise ValueError("p_out must lie in (0, 1), got %r" % (p_out,))


def _attempts_numerator(epsilon, m, root_success):
    return 1 - epsilon - epsilon * root_success * (m + 1)


def success_probability(point):
    """Probability that the packet gets through within m + 1 attempts."""
    p_out = outage_probability(point.beta, point.net)
    return 1 - p_out ** (point.proto.m + 1)


def attempts_mean_exact(proto):
    """Mean number of attempts spent on a packet that gets through.

    The constraint is taken with equality, so that the per-attempt outage is
    epsilon^(1/(m+1)).  This is the attempt count conditioned on success.
    """
    _check_epsilon(proto.epsilon)
    if proto.m == 0:
        return 1.
    root_success = per_attempt_success(proto.epsilon, proto.m)
    return (_attempts_numerator(proto.epsilon, proto.m, root_success)
            / ((1 - proto.epsilon) * root_success))


def attempts_mean_approx(proto):
    """Approximate attempt count (1 - epsilon) / (1 - epsilon^(1/(m+1))).

    This is the unconditional mean of the truncated geometric number of
    attempts and over-estimates `attempts_mean_exact`.
    """
    _check_epsilon(proto.epsilon)
    if proto.epsilon >= APPROXIMATION_EPSILON_LIMIT:
        warnings.warn("The approximate attempt count is loose for epsilon >= %g"
                      % APPROXIMATION_EPSILON_LIMIT)
    if proto.m == 0:
        return 1.
    return (1 - proto.epsilon) / per_attempt_success(proto.epsilon, proto.m)


def approximation_error(proto):
    """Relative error of `attempts_mean_approx` against `attempts_mean_exact`."""
    exact = attempts_mean_exact(proto)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        approx = attempts_mean_approx(proto)
    return abs((approx - exact) / exact)


def attempts_mean_extreme(p_out, m):
    """Attempts spent on a successful packet, written with the per-attempt outage.

    Substituting epsilon = p_out^(1+m) in `attempts_mean_exact` gives this
    expression; it tends to 1 / (1 - p_out) as m grows.
    """
    _check_outage(p_out)
    if int(m) != m or m < 0:
        raise ValueError("m must be a non-negative integer, got %r" % (m,))
    if m == 0:
        return 1.
    return _attempts_from_outage(p_out, 1 - p_out, m)


def _attempts_from_outage(p_out, survival, m):
    drop = p_out ** (m + 1)
    return (1 - drop - (m + 1) * drop * survival) / (survival * (1 - drop))


def attempts_mean_truncated(p_out, m):
    """Unconditional mean number of attempts, sum of p_out^n for n = 0..m."""
    p_out = np.asarray(p_out, dtype=np.float64)
    return np.where(p_out == 0, 1., (1 - p_out ** (m + 1)) / np.where(p_out == 0, 1., 1 - p_out))[()]


def throughput(point):
    """Link throughput in bits/s/Hz at an arbitrary operating point.

    The attempt count is the success-conditioned one taken at the effective
    drop probability P_out^(m+1).
    """
    beta, net, m = point.beta, point.net, point.proto.m
    survival = survival_probability(beta, net)
    if m == 0:
        return spectral_efficiency(beta) * survival
    p_out = outage_probability(beta, net)
    drop = p_out ** (m + 1)
    return spectral_efficiency(beta) * (1 - drop) / _attempts_from_outage(p_out, survival, m)


def _epsilon_form_factor(proto, as_printed):
    epsilon, m = proto.epsilon, proto.m
    root_success = per_attempt_success(epsilon, m)
    success = 1 - epsilon ** (m + 1) if as_printed else 1 - epsilon
    return ((1 - epsilon) * root_success * success
            / _attempts_numerator(epsilon, m, root_success))


def throughput_epsilon_form(beta, proto, as_printed=False):
    """Throughput with the quality constraint active, as a function of beta alone.

    With ``as_printed=True`` the success factor is 1 - epsilon^(m+1).
    """
    _check_epsilon(proto.epsilon)
    return (spectral_efficiency(beta) * _epsilon_form_factor(proto, as_printed))[()]


def throughput_extreme(beta, net):
    """Throughput of the two extreme cases, m = 0 and unbounded retransmissions."""
    return (spectral_efficiency(beta) * survival_probability(beta, net))[()]


def total_power(beta, pm):
    """Per-attempt power, amplifier term beta / delta plus circuit power."""
    return beta / pm.delta + pm.p_tx + pm.p_rx


def power_consumption_per_bit(beta, m, pm):
    """Total power of a packet over m + 1 attempts, normalised by the bit rate."""
    return (m + 1) * total_power(beta, pm) / spectral_efficiency(beta)


def energy_efficiency(point, pm):
    """Energy efficiency in bits/s/Hz/W at an arbitrary operating point."""
    return throughput(point) / total_power(point.beta, pm)


def constrained_threshold(proto, net):
    """Largest SIR threshold meeting P_out^(m+1) <= epsilon."""
    _check_epsilon(proto.epsilon)
    return threshold_from_survival(per_attempt_success(proto.epsilon, proto.m), net)


def energy_efficiency_epsilon_form(beta, proto, net, pm, as_printed=False):
    """Energy efficiency with the constraint active.

    The amplifier draws the power of the constraint-active threshold, so the
    denominator depends on the density but not on *beta*.
    """
    amplifier = constrained_threshold(proto, net) / pm.delta
    return throughput_epsilon_form(beta, proto, as_printed) / (amplifier + pm.p_circuit)


def d2_throughput_dbeta2(beta, proto, as_printed=False):
    """Second derivative in beta of `throughput_epsilon_form`."""
    _check_epsilon(proto.epsilon)
    beta = np.asarray(beta, dtype=np.float64)
    return (-_epsilon_form_factor(proto, as_printed) / ((beta + 1) ** 2 * LN2))[()]


def d2_ee_dbeta2(beta, proto, net, pm, as_printed=False):
    """Second derivative in beta of `energy_efficiency_epsilon_form`.

    The amplifier term is (1/delta) (-log(1 - epsilon^(1/(m+1))) / (k lambda))^(alpha/2)
    and the constant circuit power is p_tx + p_rx.
    """
    amplifier = constrained_threshold(proto, net) / pm.delta
    return (d2_throughput_dbeta2(beta, proto, as_printed) / (pm.p_circuit + amplifier))[()]
