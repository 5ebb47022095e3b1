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

"""Command line interface of python-mtclink.

Exit status is 0 on success, 1 when the self check fails and 2 on invalid
parameters or when an experiment cannot be completed.
"""

import argparse
import logging
import sys

from mtclink import experiments, figures
from mtclink.version import __version__

LOG = logging.getLogger(__name__)

# Options shared by the subcommands, as (flag, configuration key, type, help)
COMMON_OPTIONS = (("--lambda", "lambda", float, "density of interferers [nodes/m^2]"),
                  ("--alpha", "alpha", float, "path-loss exponent, larger than 2"),
                  ("--r0", "r0", float, "reference link distance [m]"),
                  ("--power-ratio", "power_ratio", float, "unlicensed over licensed transmit power"),
                  ("--epsilon", "epsilon", float, "drop probability requirement"),
                  ("--m", "m", int, "maximum number of retransmissions"),
                  ("--beta", "beta", float, "SIR threshold"),
                  ("--delta", "delta", float, "amplifier drain efficiency"),
                  ("--p-tx", "p_tx", float, "transmission circuit power [W]"),
                  ("--p-rx", "p_rx", float, "reception circuit power [W]"),
                  ("--seed", "seed", int, "seed of the Monte Carlo simulation"),
                  ("--samples", "samples", int, "number of Monte Carlo draws or episodes"),
                  ("--workers", "workers", int, "number of Monte Carlo threads"),
                  ("--sim-radius", "sim_radius", float, "radius of the simulated disk [m]"),
                  ("--m-max", "m_max", int, "largest retransmission cap searched"),
                  ("--axis", "axis", str, "sweep axis, one of %s" % ", ".join(figures.SWEEP_AXES)),
                  ("--grid", "grid", str, "sweep grid, linear or geometric"),
                  ("--start", "start", float, "first value of the sweep"),
                  ("--stop", "stop", float, "last value of the sweep"),
                  ("--points", "points", int, "number of grid points"),
                  ("--out", "out", str, "output directory"))

COMMANDS = {"sweep": "evaluate the closed forms along one parameter",
            "optimize-throughput": "maximise the throughput under the drop requirement",
            "optimize-ee": "maximise the energy efficiency under the drop requirement",
            "validate-mc": "compare the closed forms with Monte Carlo estimates",
            "reproduce-figure": "compute the data of a result figure",
            "self-check": "check the shape of the result figures",
            "run": "run the experiment described by a configuration file"}


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    for flag, key, kind, text in COMMON_OPTIONS:
        parser.add_argument(flag, dest=key, type=kind, default=None, help=text)
    parser.add_argument("--config", default=None,
                        help="key = value configuration file, overridden by the options")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more log output, repeat for debug messages")
    return parser


def create_parser():
    """Argument parser of the mtclink command."""
    parser = argparse.ArgumentParser(prog="mtclink",
                                     description="Throughput and energy efficiency of an unlicensed "
                                                 "link with capped retransmissions.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True
    common = _common_parser()
    for command, text in COMMANDS.items():
        sub = subparsers.add_parser(command, parents=[common], help=text, description=text)
        if command == "reproduce-figure":
            sub.add_argument("figure", choices=list(figures.FIGURES), help="figure identifier")
    return parser


def _setup_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, format="[%(levelname)s: %(asctime)s : %(name)s] %(message)s")


def _settings(args):
    settings = experiments.read_config(args.config) if args.config else {}
    for _, key, _, _ in COMMON_OPTIONS:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    if args.command == "reproduce-figure":
        settings["figure"] = args.figure
    if args.command not in ("run", "self-check"):
        settings["kind"] = args.command
        if args.command != "reproduce-figure":
            settings.pop("figure", None)
    return settings


def _self_check(settings):
    points = int(settings.get("points", figures.DEFAULT_POINTS))
    checks = experiments.self_check(experiments.network_from_settings(settings),
                                    experiments.power_from_settings(settings),
                                    points)
    failed = 0
    for name, passed, detail in checks:
        print("%-6s %s%s" % ("ok" if passed else "FAILED", name, " (%s)" % detail if detail else ""))
        failed += not passed
    print("%d/%d checks passed" % (len(checks) - failed, len(checks)))
    return 1 if failed else 0


def main(argv=None):
    """Run the mtclink command, returns the exit status."""
    args = create_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        settings = _settings(args)
        if args.command == "self-check":
            settings.pop("kind", None)
            settings.pop("figure", None)
            return _self_check(settings)
        spec = experiments.spec_from_settings(settings)
        return experiments.run(spec)
    except (ValueError, experiments.ExperimentError, OSError) as err:
        LOG.debug("Aborting", exc_info=True)
        sys.stderr.write("mtclink: error: %s\n" % err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
