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

"""Data of the result figures and of parameter sweeps, as xarray Datasets.

Every dataset has a single dimension, the x axis of the figure, and one data
variable per curve.  The attributes ``title``, ``ylabel``, ``logx`` and
``logy`` describe how to plot it.
"""

import logging
import warnings

import numpy as np
import xarray as xr

from mtclink import model, optimizer
from mtclink.params import DEFAULT_M_MAX, LinkPoint, NetworkParams, PowerModel, ProtocolParams

LOG = logging.getLogger(__name__)

DEFAULT_POINTS = 200
DEFAULT_DENSITIES = (1e-3, 1e-2, 1e-1)
DEFAULT_EPSILONS = (0.001, 0.01, 0.1)
DEFAULT_CAPS = (1, 5, 10)
FIGURE_M_MAX = 20
DENSITY_RANGE = (1e-4, 1.)
EPSILON_RANGE = (1e-4, 0.4)
BETA_RANGE = (1e-3, 1e2)
SWEEP_AXES = ("beta", "lambda", "epsilon", "m")


def make_grid(start, stop, points, grid="geometric"):
    """Grid of *points* values from *start* to *stop*, both included."""
    if points < 1:
        raise ValueError("points must be at least 1, got %r" % (points,))
    if grid == "geometric":
        if not (start > 0 and stop > 0):
            raise ValueError("A geometric grid needs positive bounds, got %r, %r" % (start, stop))
        return np.geomspace(start, stop, points)
    if grid == "linear":
        return np.linspace(start, stop, points)
    raise ValueError("Unknown grid kind %r" % (grid,))


def _dataset(dim, coord, curves, title, ylabel, logx=False, logy=False):
    return xr.Dataset({name: (dim, np.asarray(values, dtype=np.float64))
                       for name, values in curves.items()},
                      coords={dim: coord},
                      attrs={"title": title, "ylabel": ylabel,
                             "logx": int(logx), "logy": int(logy)})


def _caps(m_max):
    return np.arange(m_max + 1)


def _quiet_approx(proto):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return model.attempts_mean_approx(proto)


def figure_e1(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Exact and approximate attempt counts versus m."""
    epsilons = DEFAULT_EPSILONS if epsilon is None else (epsilon,)
    caps = _caps(FIGURE_M_MAX)
    curves = {}
    for eps in epsilons:
        curves["exact_epsilon=%g" % eps] = [model.attempts_mean_exact(ProtocolParams(m, eps)) for m in caps]
        curves["approx_epsilon=%g" % eps] = [_quiet_approx(ProtocolParams(m, eps)) for m in caps]
    return _dataset("m", caps, curves, "Attempts versus m", "1 + mean retransmissions")


def figure_e2(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Exact and approximate attempt counts versus epsilon."""
    grid = make_grid(*EPSILON_RANGE, points)
    curves = {}
    for m in DEFAULT_CAPS:
        curves["exact_m=%d" % m] = [model.attempts_mean_exact(ProtocolParams(m, eps)) for eps in grid]
        curves["approx_m=%d" % m] = [_quiet_approx(ProtocolParams(m, eps)) for eps in grid]
    return _dataset("epsilon", grid, curves, "Attempts versus epsilon", "1 + mean retransmissions",
                    logx=True)


def figure_e3(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Relative error of the approximate attempt count versus m."""
    epsilons = DEFAULT_EPSILONS if epsilon is None else (epsilon,)
    caps = _caps(DEFAULT_M_MAX)
    curves = {"error_epsilon=%g" % eps: [model.approximation_error(ProtocolParams(m, eps)) for m in caps]
              for eps in epsilons}
    return _dataset("m", caps, curves, "Approximation error versus m", "relative error")


def figure_e4(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Relative error of the approximate attempt count versus epsilon."""
    grid = make_grid(*EPSILON_RANGE, points)
    curves = {"error_m=%d" % m: [model.approximation_error(ProtocolParams(m, eps)) for eps in grid]
              for m in DEFAULT_CAPS}
    return _dataset("epsilon", grid, curves, "Approximation error versus epsilon", "relative error",
                    logx=True)


def _base(net):
    return NetworkParams(DEFAULT_DENSITIES[1]) if net is None else net


def figure_t1(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Throughput at the optimal threshold versus m, one curve per density."""
    base = _base(net)
    epsilon = 0.02 if epsilon is None else epsilon
    caps = _caps(FIGURE_M_MAX)
    curves = {"T_lambda=%g" % lam: optimizer.throughput_by_m(epsilon, base.with_density(lam), FIGURE_M_MAX)
              for lam in DEFAULT_DENSITIES}
    return _dataset("m", caps, curves, "Throughput versus m, epsilon=%g" % epsilon, "T [bits/s/Hz]")


def figure_t2(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Optimal throughput versus density, with the two extreme cases."""
    base = _base(net)
    grid = make_grid(*DENSITY_RANGE, points)
    curves = {}
    for eps in DEFAULT_EPSILONS:
        curves["Tstar_epsilon=%g" % eps] = [
            optimizer.optimize_throughput(eps, base.with_density(lam)).objective for lam in grid]
    # the two extreme cases share one expression, the unbounded one is
    # computed from the general throughput at a large cap
    curves["Tstar_m=0"] = [optimizer.optimize_extreme(base.with_density(lam)).objective for lam in grid]
    curves["Tstar_m=inf"] = [optimizer.optimize_unbounded(base.with_density(lam)).objective for lam in grid]
    return _dataset("lambda", grid, curves, "Optimal throughput versus density", "T* [bits/s/Hz]",
                    logx=True, logy=True)


def figure_ee1(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Energy efficiency at the optimal threshold versus density, m = 5."""
    base = _base(net)
    pm = PowerModel() if pm is None else pm
    grid = make_grid(*DENSITY_RANGE, points)
    curves = {}
    for eps in DEFAULT_EPSILONS:
        proto = ProtocolParams(5, eps)
        values = []
        for lam in grid:
            lnet = base.with_density(lam)
            values.append(model.energy_efficiency_epsilon_form(
                optimizer.beta_star(proto, lnet), proto, lnet, pm))
        curves["EE_epsilon=%g" % eps] = values
    return _dataset("lambda", grid, curves, "Energy efficiency versus density, m=5", "EE [bits/s/Hz/W]",
                    logx=True)


def figure_ee2(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Energy efficiency versus the SIR threshold, m = 5."""
    base = _base(net)
    pm = PowerModel() if pm is None else pm
    proto = ProtocolParams(5, 0.001 if epsilon is None else epsilon)
    grid = make_grid(*BETA_RANGE, points)
    curves = {"EE_lambda=%g" % lam: [model.energy_efficiency(LinkPoint(beta, base.with_density(lam), proto), pm)
                                     for beta in grid]
              for lam in DEFAULT_DENSITIES}
    return _dataset("beta", grid, curves, "Energy efficiency versus beta, m=5, epsilon=%g" % proto.epsilon,
                    "EE [bits/s/Hz/W]", logx=True)


def figure_ee3(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Energy efficiency at the throughput-optimal threshold versus m."""
    base = _base(net)
    pm = PowerModel() if pm is None else pm
    epsilon = 0.001 if epsilon is None else epsilon
    caps = _caps(FIGURE_M_MAX)
    curves = {}
    for lam in DEFAULT_DENSITIES:
        lnet = base.with_density(lam)
        values = []
        for m in caps:
            proto = ProtocolParams(m, epsilon)
            values.append(model.energy_efficiency(LinkPoint(optimizer.beta_star(proto, lnet), lnet, proto), pm))
        curves["EE_lambda=%g" % lam] = values
    return _dataset("m", caps, curves, "Energy efficiency versus m, epsilon=%g" % epsilon, "EE [bits/s/Hz/W]")


def figure_ee4(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Optimal energy efficiency versus density."""
    base = _base(net)
    pm = PowerModel() if pm is None else pm
    grid = make_grid(*DENSITY_RANGE, points)
    curves = {}
    for eps in DEFAULT_EPSILONS:
        LOG.debug("Optimising the energy efficiency for epsilon=%g", eps)
        curves["EEstar_epsilon=%g" % eps] = [
            optimizer.optimize_ee(eps, base.with_density(lam), pm, FIGURE_M_MAX).objective for lam in grid]
    return _dataset("lambda", grid, curves, "Optimal energy efficiency versus density", "EE* [bits/s/Hz/W]",
                    logx=True)


def figure_ee4_m(net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Energy efficiency maximised over beta for each m, versus m."""
    base = _base(net)
    pm = PowerModel() if pm is None else pm
    epsilon = 0.001 if epsilon is None else epsilon
    caps = _caps(FIGURE_M_MAX)
    curves = {}
    for lam in DEFAULT_DENSITIES:
        lnet = base.with_density(lam)
        values = []
        for m in caps:
            proto = ProtocolParams(m, epsilon)
            beta = optimizer.beta_star_ee(proto, lnet, pm)
            values.append(model.energy_efficiency(LinkPoint(beta, lnet, proto), pm))
        curves["EEstar_lambda=%g" % lam] = values
    return _dataset("m", caps, curves, "Optimal energy efficiency versus m, epsilon=%g" % epsilon,
                    "EE* [bits/s/Hz/W]")


FIGURES = {"E1": figure_e1,
           "E2": figure_e2,
           "E3": figure_e3,
           "E4": figure_e4,
           "T1": figure_t1,
           "T2": figure_t2,
           "EE1": figure_ee1,
           "EE2": figure_ee2,
           "EE3": figure_ee3,
           "EE4": figure_ee4,
           "EE4-m": figure_ee4_m}


def reproduce_figure(figure_id, net=None, pm=None, points=DEFAULT_POINTS, epsilon=None):
    """Compute the data of figure *figure_id*.

    *net* provides alpha, r0 and the power ratio; the densities are the
    figure's own.  *epsilon* replaces the requirement of the single
    requirement figures (E1, E3, T1, EE2, EE3, EE4-m).
    """
    try:
        func = FIGURES[figure_id]
    except KeyError:
        raise ValueError("Unknown figure %r, expected one of %s" % (figure_id, ", ".join(FIGURES)))
    LOG.info("Computing figure %s", figure_id)
    dataset = func(net=net, pm=pm, points=points, epsilon=epsilon)
    dataset.attrs["figure"] = figure_id
    return dataset


def _sweep_row(net, proto, pm, beta):
    point = LinkPoint(beta, net, proto)
    return {"outage": model.outage_probability(beta, net),
            "success": model.success_probability(point),
            "attempts_exact": model.attempts_mean_exact(proto),
            "attempts_approx": _quiet_approx(proto),
            "approximation_error": model.approximation_error(proto),
            "beta_star": optimizer.beta_star(proto, net),
            "throughput": model.throughput(point),
            "throughput_at_beta_star": model.throughput_epsilon_form(optimizer.beta_star(proto, net), proto),
            "energy_efficiency": model.energy_efficiency(point, pm)}


def sweep(axis, values, net, proto, pm, beta):
    """Evaluate the closed forms along one parameter axis.

    *axis* is one of `SWEEP_AXES`; the other parameters stay at the given
    values.  Along ``m`` the values are rounded to distinct integers.
    """
    if axis not in SWEEP_AXES:
        raise ValueError("Unknown sweep axis %r, expected one of %s" % (axis, ", ".join(SWEEP_AXES)))
    values = np.asarray(values, dtype=np.float64)
    if axis == "m":
        values = np.unique(np.rint(values)).astype(int)
    if values.size == 0:
        raise ValueError("Empty sweep grid")
    rows = []
    for value in values:
        if axis == "beta":
            rows.append(_sweep_row(net, proto, pm, value))
        elif axis == "lambda":
            rows.append(_sweep_row(net.with_density(value), proto, pm, beta))
        elif axis == "epsilon":
            rows.append(_sweep_row(net, ProtocolParams(proto.m, value), pm, beta))
        else:
            rows.append(_sweep_row(net, ProtocolParams(int(value), proto.epsilon), pm, beta))
    curves = {name: [row[name] for row in rows] for name in rows[0]}
    return _dataset(axis, values, curves, "Sweep over %s" % axis, "value",
                    logx=axis != "m" and values.min() > 0)
