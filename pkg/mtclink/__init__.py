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

"""Throughput and energy efficiency of an interference-limited unlicensed link.
"""

from mtclink.model import (energy_efficiency, outage_probability,
                           success_probability, throughput)
from mtclink.optimizer import Optimum, optimize_ee, optimize_throughput
from mtclink.params import LinkPoint, NetworkParams, PowerModel, ProtocolParams
from mtclink.version import __version__

__all__ = ["LinkPoint", "NetworkParams", "Optimum", "PowerModel", "ProtocolParams",
           "energy_efficiency", "optimize_ee", "optimize_throughput", "outage_probability",
           "success_probability", "throughput", "__version__"]
