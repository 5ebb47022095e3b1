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

"""Experiments: sweeps, optimisations, Monte Carlo validations and figures.

An experiment is described by an `ExperimentSpec`, built from a flat
``key = value`` configuration (see `CONFIG_KEYS`).  Running it writes three
files in the output directory:

- ``data.csv``: a ``#`` provenance block, a header row and one row per grid
  point,
- ``meta.txt``: the resolved configuration, readable again as a
  configuration file to replay the run,
- ``plot.gp``: a gnuplot script plotting ``data.csv``.
"""

import configparser
import logging
import os
import sys
from dataclasses import dataclass, field

import numpy as np
import xarray as xr

from mtclink import figures, model, optimizer, simulator
from mtclink.params import (DEFAULT_ALPHA, DEFAULT_DELTA, DEFAULT_M_MAX,
                            DEFAULT_P_RX, DEFAULT_P_TX, DEFAULT_POWER_RATIO,
                            DEFAULT_R0, LinkPoint, NetworkParams, PowerModel,
                            ProtocolParams)
from mtclink.version import __version__

LOG = logging.getLogger(__name__)

KINDS = ("sweep", "optimize-throughput", "optimize-ee", "validate-mc", "reproduce-figure")

# Key name and type of every configuration entry, in the order of meta.txt
CONFIG_KEYS = {"kind": str,
               "figure": str,
               "lambda": float,
               "alpha": float,
               "r0": float,
               "power_ratio": float,
               "epsilon": float,
               "m": int,
               "beta": float,
               "delta": float,
               "p_tx": float,
               "p_rx": float,
               "seed": int,
               "samples": int,
               "workers": int,
               "sim_radius": float,
               "block_size": int,
               "m_max": int,
               "axis": str,
               "grid": str,
               "start": float,
               "stop": float,
               "points": int,
               "out": str}

DEFAULT_LAMBDA = 0.01
DEFAULT_EPSILON = 0.01
DEFAULT_M = 1
DEFAULT_BETA = 1.

SWEEP_BOUNDS = {"beta": (1e-2, 1e2),
                "lambda": figures.DENSITY_RANGE,
                "epsilon": figures.EPSILON_RANGE}

COVERAGE_SIGMAS = 3.

CSV_FILE = "data.csv"
META_FILE = "meta.txt"
PLOT_FILE = "plot.gp"


class ExperimentError(RuntimeError):
    """An experiment could not be completed."""


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything needed to run one experiment.

    *figure_epsilon* is the requirement given explicitly for a figure, None
    to keep the figure's own.
    """

    kind: str
    figure_id: str = None
    net: NetworkParams = field(default_factory=lambda: NetworkParams(DEFAULT_LAMBDA))
    proto: ProtocolParams = field(default_factory=lambda: ProtocolParams(DEFAULT_M, DEFAULT_EPSILON))
    power: PowerModel = field(default_factory=PowerModel)
    mc: simulator.McConfig = field(default_factory=simulator.McConfig)
    axis: str = "beta"
    grid: str = "geometric"
    start: float = None
    stop: float = None
    points: int = figures.DEFAULT_POINTS
    beta: float = DEFAULT_BETA
    m_max: int = DEFAULT_M_MAX
    figure_epsilon: float = None
    output_path: str = "."

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("Unknown experiment kind %r, expected one of %s" % (self.kind, ", ".join(KINDS)))
        if self.kind == "reproduce-figure":
            if self.figure_id not in figures.FIGURES:
                raise ValueError("Unknown figure %r, expected one of %s"
                                 % (self.figure_id, ", ".join(figures.FIGURES)))
        elif self.figure_id is not None:
            raise ValueError("A figure is only given with reproduce-figure")
        if self.axis not in figures.SWEEP_AXES:
            raise ValueError("Unknown sweep axis %r" % (self.axis,))
        if self.grid not in ("linear", "geometric"):
            raise ValueError("Unknown grid kind %r" % (self.grid,))
        if self.points < 1:
            raise ValueError("points must be at least 1, got %r" % (self.points,))
        if not self.beta > 0:
            raise ValueError("beta must be strictly positive, got %r" % (self.beta,))
        if self.m_max < 1:
            raise ValueError("m_max must be at least 1, got %r" % (self.m_max,))

    def sweep_values(self):
        """Grid of the sweep axis."""
        if self.axis == "m":
            start = 0 if self.start is None else self.start
            stop = self.m_max if self.stop is None else self.stop
            return np.arange(int(round(start)), int(round(stop)) + 1)
        default_start, default_stop = SWEEP_BOUNDS[self.axis]
        start = default_start if self.start is None else self.start
        stop = default_stop if self.stop is None else self.stop
        return figures.make_grid(start, stop, self.points, self.grid)


def _convert(key, value):
    if value is None or not isinstance(value, str):
        return value
    try:
        return CONFIG_KEYS[key](value.strip())
    except ValueError:
        raise ValueError("Invalid value %r for %s" % (value, key))


def read_config(filename):
    """Read a flat ``key = value`` file into a dictionary of typed values.

    Lines starting with ``#`` are comments.  Dashes in keys are read as
    underscores; unknown keys are an error.
    """
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#",))
    parser.optionxform = str
    with open(filename) as fd:
        text = fd.read()
    try:
        parser.read_string("[experiment]\n" + text, source=filename)
    except configparser.Error as err:
        raise ValueError("Cannot parse %s: %s" % (filename, err))
    settings = {}
    for key, value in parser.items("experiment"):
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ValueError("Unknown configuration key %r in %s" % (key, filename))
        settings[key] = _convert(key, value)
    LOG.debug("Read %d settings from %s", len(settings), filename)
    return settings


def _typed(settings):
    unknown = set(settings) - set(CONFIG_KEYS)
    if unknown:
        raise ValueError("Unknown configuration keys: %s" % ", ".join(sorted(unknown)))
    return {key: _convert(key, value) for key, value in settings.items() if value is not None}


def network_from_settings(settings):
    """Network parameters of *settings*, defaults for the missing ones."""
    values = _typed(settings)
    return NetworkParams(values.get("lambda", DEFAULT_LAMBDA),
                         values.get("alpha", DEFAULT_ALPHA),
                         values.get("r0", DEFAULT_R0),
                         values.get("power_ratio", DEFAULT_POWER_RATIO))


def power_from_settings(settings):
    """Power model of *settings*, defaults for the missing entries."""
    values = _typed(settings)
    return PowerModel(values.get("delta", DEFAULT_DELTA),
                      values.get("p_tx", DEFAULT_P_TX),
                      values.get("p_rx", DEFAULT_P_RX))


def spec_from_settings(settings):
    """Build an `ExperimentSpec` from a dictionary of settings."""
    values = _typed(settings)
    if "kind" not in values:
        raise ValueError("No experiment kind given")
    kind = values["kind"]
    net = network_from_settings(values)
    proto = ProtocolParams(values.get("m", DEFAULT_M), values.get("epsilon", DEFAULT_EPSILON))
    power = power_from_settings(values)
    mc = simulator.McConfig(n_samples=values.get("samples", simulator.McConfig.n_samples),
                            sim_radius=values.get("sim_radius"),
                            seed=values.get("seed", simulator.McConfig.seed),
                            workers=values.get("workers", simulator.McConfig.workers),
                            block_size=values.get("block_size", simulator.DEFAULT_BLOCK_SIZE))
    return ExperimentSpec(kind=kind,
                          figure_id=values.get("figure"),
                          net=net,
                          proto=proto,
                          power=power,
                          mc=mc,
                          axis=values.get("axis", "beta"),
                          grid=values.get("grid", "geometric"),
                          start=values.get("start"),
                          stop=values.get("stop"),
                          points=values.get("points", figures.DEFAULT_POINTS),
                          beta=values.get("beta", DEFAULT_BETA),
                          m_max=values.get("m_max", DEFAULT_M_MAX),
                          figure_epsilon=values.get("epsilon") if kind == "reproduce-figure" else None,
                          output_path=values.get("out", "."))


def settings_of(spec):
    """Resolved settings of *spec*, without the output path."""
    settings = {"kind": spec.kind,
                "figure": spec.figure_id,
                "lambda": spec.net.lambda_,
                "alpha": spec.net.alpha,
                "r0": spec.net.r0,
                "power_ratio": spec.net.power_ratio,
                "epsilon": spec.figure_epsilon if spec.kind == "reproduce-figure" else spec.proto.epsilon,
                "m": spec.proto.m,
                "beta": spec.beta,
                "delta": spec.power.delta,
                "p_tx": spec.power.p_tx,
                "p_rx": spec.power.p_rx,
                "seed": spec.mc.seed,
                "samples": spec.mc.n_samples,
                "workers": spec.mc.workers,
                "sim_radius": spec.mc.sim_radius,
                "block_size": spec.mc.block_size,
                "m_max": spec.m_max,
                "axis": spec.axis,
                "grid": spec.grid,
                "start": spec.start,
                "stop": spec.stop,
                "points": spec.points}
    return {key: value for key, value in settings.items() if value is not None}


def _format_value(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _optimum_summary(name, opt):
    return {"m_star": opt.m_star,
            "beta_star": opt.beta_star,
            name: opt.objective,
            "constraint_residual": opt.constraint_residual}


def _run_optimize_throughput(spec):
    epsilon = spec.proto.epsilon
    opt = optimizer.optimize_throughput(epsilon, spec.net, spec.m_max)
    caps = np.arange(spec.m_max + 1)
    betas = [optimizer.beta_star(ProtocolParams(m, epsilon), spec.net) for m in caps]
    dataset = xr.Dataset({"beta_star": ("m", betas),
                          "throughput": ("m", optimizer.throughput_by_m(epsilon, spec.net, spec.m_max))},
                         coords={"m": caps},
                         attrs={"title": "Throughput at the optimal threshold, epsilon=%g" % epsilon,
                                "ylabel": "T [bits/s/Hz]", "logx": 0, "logy": 0})
    return dataset, _optimum_summary("throughput", opt)


def _run_optimize_ee(spec):
    epsilon = spec.proto.epsilon
    opt = optimizer.optimize_ee(epsilon, spec.net, spec.power, spec.m_max)
    caps = np.arange(spec.m_max + 1)
    betas, values = [], []
    for m in caps:
        proto = ProtocolParams(m, epsilon)
        beta = optimizer.beta_star_ee(proto, spec.net, spec.power)
        betas.append(beta)
        values.append(model.energy_efficiency(LinkPoint(beta, spec.net, proto), spec.power))
    dataset = xr.Dataset({"beta": ("m", betas), "energy_efficiency": ("m", values)},
                         coords={"m": caps},
                         attrs={"title": "Energy efficiency maximised over beta, epsilon=%g" % epsilon,
                                "ylabel": "EE [bits/s/Hz/W]", "logx": 0, "logy": 0})
    return dataset, _optimum_summary("energy_efficiency", opt)


def validate_mc(beta, net, proto, pm, cfg):
    """Compare every closed form with its Monte Carlo estimate at one operating point.

    Returns a dataset indexed by quantity, with the closed form, the estimate,
    its standard error and the z score of the difference.
    """
    point = LinkPoint(beta, net, proto)
    m = proto.m
    p_out = model.outage_probability(beta, net)
    link = simulator.simulate_link(point, pm, cfg)
    episodes = link.retransmissions
    if not episodes.attempts_mean_given_success.has_data:
        raise ExperimentError("No episode succeeded at beta=%g, lambda=%g: the conditional attempt count "
                              "has no data" % (beta, net.lambda_))
    rows = [("outage", p_out, simulator.estimate_outage(beta, net, cfg)),
            ("success_prob", model.success_probability(point), episodes.success_prob),
            ("drop_prob", p_out ** (m + 1), episodes.drop_prob),
            ("attempts_mean_all", model.attempts_mean_truncated(p_out, m), episodes.attempts_mean_all),
            ("attempts_mean_given_success", model.attempts_mean_extreme(p_out, m),
             episodes.attempts_mean_given_success),
            ("throughput", model.throughput(point), link.throughput),
            ("energy_efficiency", model.energy_efficiency(point, pm), link.energy_efficiency)]

    z_scores = []
    for _, closed, estimate in rows:
        diff = abs(estimate.mean - closed)
        if estimate.std_error > 0:
            z_scores.append(diff / estimate.std_error)
        else:
            z_scores.append(0. if diff == 0 else np.inf)
    return xr.Dataset({"closed_form": ("quantity", [row[1] for row in rows]),
                       "mc_mean": ("quantity", [row[2].mean for row in rows]),
                       "mc_std_error": ("quantity", [row[2].std_error for row in rows]),
                       "n_effective": ("quantity", [row[2].n_effective for row in rows]),
                       "z_score": ("quantity", z_scores)},
                      coords={"quantity": [row[0] for row in rows]},
                      attrs={"title": "Monte Carlo validation at beta=%g, m=%d" % (beta, m),
                             "ylabel": "value", "logx": 0, "logy": 0})


def _run_validate_mc(spec):
    dataset = validate_mc(spec.beta, spec.net, spec.proto, spec.power, spec.mc)
    covered = int((dataset["z_score"] <= COVERAGE_SIGMAS).sum())
    return dataset, {"covered": "%d/%d" % (covered, dataset.sizes["quantity"])}


def compute(spec):
    """Compute the data of *spec*, returns the dataset and a summary dictionary."""
    if spec.kind == "sweep":
        return figures.sweep(spec.axis, spec.sweep_values(), spec.net, spec.proto, spec.power, spec.beta), {}
    if spec.kind == "optimize-throughput":
        return _run_optimize_throughput(spec)
    if spec.kind == "optimize-ee":
        return _run_optimize_ee(spec)
    if spec.kind == "validate-mc":
        return _run_validate_mc(spec)
    return figures.reproduce_figure(spec.figure_id, spec.net, spec.power, spec.points, spec.figure_epsilon), {}


def _provenance(spec, dataset):
    lines = ["python-mtclink %s" % __version__,
             "kind = %s" % spec.kind]
    if spec.figure_id is not None:
        lines.append("figure = %s" % spec.figure_id)
    lines.append("title = %s" % dataset.attrs.get("title", ""))
    return "".join("# %s\n" % line for line in lines)


def write_csv(filename, dataset, header=""):
    """Write *dataset* as a csv file, floats in round-trip precision."""
    with open(filename, "w") as fd:
        fd.write(header)
        dataset.to_dataframe().to_csv(fd, float_format="%.17g", lineterminator="\n")


def write_meta(filename, spec, summary):
    """Write the resolved settings of *spec* as a replayable configuration file."""
    with open(filename, "w") as fd:
        fd.write("# python-mtclink %s\n" % __version__)
        for key, value in settings_of(spec).items():
            fd.write("%s = %s\n" % (key, _format_value(value)))
        for key, value in summary.items():
            fd.write("# result %s = %s\n" % (key, _format_value(value)))


def write_plot_script(filename, dataset):
    """Write a gnuplot script plotting every data variable of *dataset*."""
    dim = next(iter(dataset.dims))
    nb_curves = len(dataset.data_vars)
    lines = ['set datafile separator ","',
             "set key autotitle columnhead",
             'set title "%s"' % dataset.attrs.get("title", ""),
             'set xlabel "%s"' % dim,
             'set ylabel "%s"' % dataset.attrs.get("ylabel", "")]
    if dataset.attrs.get("logx"):
        lines.append("set logscale x")
    if dataset.attrs.get("logy"):
        lines.append("set logscale y")
    if np.issubdtype(dataset[dim].dtype, np.number):
        lines.append('plot for [i=2:%d] "%s" using 1:i with linespoints' % (nb_curves + 1, CSV_FILE))
    else:
        lines.append('plot for [i=2:%d] "%s" using 0:i:xtic(1) with points' % (nb_curves + 1, CSV_FILE))
    with open(filename, "w") as fd:
        fd.write("".join(line + "\n" for line in lines))


def write_artifacts(spec, dataset, summary):
    """Write data.csv, meta.txt and plot.gp in the output directory of *spec*."""
    try:
        os.makedirs(spec.output_path, exist_ok=True)
        write_csv(os.path.join(spec.output_path, CSV_FILE), dataset, _provenance(spec, dataset))
        write_meta(os.path.join(spec.output_path, META_FILE), spec, summary)
        write_plot_script(os.path.join(spec.output_path, PLOT_FILE), dataset)
    except OSError as err:
        raise ExperimentError("Cannot write to %s: %s" % (spec.output_path, err))
    LOG.info("Wrote %s, %s and %s in %s", CSV_FILE, META_FILE, PLOT_FILE, spec.output_path)


def run(spec, stream=None):
    """Run the experiment *spec*, write its artifacts and print its summary.

    Returns the exit status, 0 on success.
    """
    stream = sys.stdout if stream is None else stream
    LOG.info("Running %s", spec.kind)
    dataset, summary = compute(spec)
    write_artifacts(spec, dataset, summary)
    for key, value in summary.items():
        stream.write("%s = %s\n" % (key, _format_value(value)))
    return 0


def _single_interior_maximum(values):
    values = np.asarray(values)
    top = int(np.argmax(values))
    steps = np.diff(values)
    return 0 < top < values.size - 1 and bool(np.all(steps[:top] > 0) and np.all(steps[top:] < 0))


def _sign_changes(values):
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def self_check(net=None, pm=None, points=figures.DEFAULT_POINTS):
    """Check the qualitative shape of the result figures.

    Returns a list of (name, passed, detail) tuples.
    """
    checks = []

    t1 = figures.reproduce_figure("T1", net, pm, points)
    for name, curve in t1.data_vars.items():
        checks.append(("T1 %s rises then falls in m" % name, _single_interior_maximum(curve.values),
                       "maximum at m=%d" % int(curve["m"][int(curve.argmax())])))

    t2 = figures.reproduce_figure("T2", net, pm, points)
    for name, curve in t2.data_vars.items():
        steps = np.diff(curve.values)
        checks.append(("T2 %s nonincreasing in lambda" % name,
                       bool(np.all(steps <= 1e-12 * np.abs(curve.values[1:]))),
                       "largest increase %g" % steps.max()))
    checks.append(("T2 extreme cases agree",
                   bool(np.allclose(t2["Tstar_m=0"].values, t2["Tstar_m=inf"].values, rtol=1e-6, atol=0.)),
                   "largest relative gap %g" % np.max(np.abs(t2["Tstar_m=inf"].values / t2["Tstar_m=0"].values - 1))))
    dense = t2["lambda"].values >= 1e-3
    checks.append(("T2 epsilon=0.1 optimum at least the extreme one for lambda >= 1e-3",
                   bool(np.all(t2["Tstar_epsilon=0.1"].values[dense]
                               >= t2["Tstar_m=0"].values[dense] * (1 - 1e-9))), ""))

    ee2 = figures.reproduce_figure("EE2", net, pm, points)
    for name, curve in ee2.data_vars.items():
        checks.append(("EE2 %s has a single interior maximum in beta" % name,
                       _single_interior_maximum(curve.values),
                       "maximum at beta=%g" % float(curve["beta"][int(curve.argmax())])))

    ee1 = figures.reproduce_figure("EE1", net, pm, points)
    crossings = _sign_changes(ee1["EE_epsilon=0.001"].values - ee1["EE_epsilon=0.1"].values)
    checks.append(("EE1 epsilon=0.001 and epsilon=0.1 cross once", crossings == 1,
                   "%d crossings" % crossings))

    e3 = figures.reproduce_figure("E3", net, pm, points)
    for name, curve in e3.data_vars.items():
        checks.append(("E3 %s nondecreasing in m" % name, bool(np.all(np.diff(curve.values) >= 0)), ""))
    largest = float(e3["error_epsilon=0.1"].values[-1])
    checks.append(("E3 epsilon=0.1 error reaches 0.2", abs(largest - 0.2) <= 0.02, "error %.4f" % largest))

    for name, passed, detail in checks:
        LOG.debug("%s: %s %s", name, "ok" if passed else "FAILED", detail)
    return checks
