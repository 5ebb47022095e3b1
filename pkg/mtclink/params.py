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

"""Parameter sets of the unlicensed link model.

The network is a Poisson field of licensed interferers of density *lambda_*
around a reference unlicensed link of length *r0*; the protocol allows up to
*m* retransmissions under a drop-probability requirement *epsilon*; the power
model follows a drain-efficiency amplifier plus constant circuit powers.
"""

from dataclasses import dataclass

# Defaults used throughout the numerical results
DEFAULT_ALPHA = 4.
DEFAULT_R0 = 1.
DEFAULT_POWER_RATIO = 1.
DEFAULT_DELTA = 0.35
DEFAULT_P_TX = 0.0979  # [W]
DEFAULT_P_RX = 0.1122  # [W]
DEFAULT_M_MAX = 50


def _check_positive(name, value):
    if not value > 0:
        raise ValueError("%s must be strictly positive, got %r" % (name, value))


@dataclass(frozen=True)
class NetworkParams:
    """Geometry of the interference-limited link.

    Args:
        lambda_: spatial density of interferers (nodes/m^2).
        alpha: path-loss exponent, must exceed 2.
        r0: reference link distance (m).
        power_ratio: unlicensed over licensed transmit power, P_s / P_p.
    """

    lambda_: float
    alpha: float = DEFAULT_ALPHA
    r0: float = DEFAULT_R0
    power_ratio: float = DEFAULT_POWER_RATIO

    def __post_init__(self):
        _check_positive("lambda", self.lambda_)
        if not self.alpha > 2:
            # the aggregate interference diverges for alpha <= 2
            raise ValueError("alpha must be larger than 2, got %r" % (self.alpha,))
        _check_positive("r0", self.r0)
        _check_positive("power_ratio", self.power_ratio)

    def with_density(self, lambda_):
        """Return a copy of the parameters with another density."""
        return NetworkParams(lambda_, self.alpha, self.r0, self.power_ratio)


@dataclass(frozen=True)
class ProtocolParams:
    """Retransmission cap *m* and drop-probability requirement *epsilon*."""

    m: int
    epsilon: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 0:
            raise ValueError("m must be a non-negative integer, got %r" % (self.m,))
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1), got %r" % (self.epsilon,))

    @property
    def attempts(self):
        """Maximum number of transmission attempts."""
        return self.m + 1


@dataclass(frozen=True)
class PowerModel:
    """Drain efficiency of the amplifier and circuit powers in watts."""

    delta: float = DEFAULT_DELTA
    p_tx: float = DEFAULT_P_TX
    p_rx: float = DEFAULT_P_RX

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1], got %r" % (self.delta,))
        _check_positive("p_tx", self.p_tx)
        _check_positive("p_rx", self.p_rx)

    @property
    def p_circuit(self):
        """Constant circuit power, transmission plus reception."""
        return self.p_tx + self.p_rx


@dataclass(frozen=True)
class LinkPoint:
    """An operating point: SIR threshold *beta* on a given network and protocol."""

    beta: float
    net: NetworkParams
    proto: ProtocolParams

    def __post_init__(self):
        _check_positive("beta", self.beta)
