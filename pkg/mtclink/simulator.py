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

"""Monte Carlo simulation of the link, used as an oracle for the closed forms.

Every draw realises a fresh Poisson field of interferers on a disk of radius
`McConfig.sim_radius` around the receiver, with exponential (Rayleigh) power
gains of mean 1 on all links.  Retransmission episodes redraw the field and
the fading at every attempt.

Episodes are split in blocks of `McConfig.block_size`.  Block number b draws
from its own Philox stream keyed by ``SeedSequence(seed, spawn_key=(b,))``,
and the blocks are gathered in block order, so that results only depend on
the seed and not on the number of workers.
"""

import logging
import warnings
from dataclasses import dataclass

import dask
import numpy as np

from mtclink.model import spectral_efficiency, total_power

LOG = logging.getLogger(__name__)

DEFAULT_BLOCK_SIZE = 1024
N_BATCHES = 20
# Mean interference from outside the disk, relative to the one from outside r0
TAIL_FRACTION = 1e-3
MAX_EXPECTED_POINTS = 1e5
# Interferer positions, gains and owners of one block, about 2.4 GB
MAX_POINTS_PER_BLOCK = 1e8


def default_sim_radius(net):
    """Truncation radius of the simulated disk.

    The mean interference of the interferers beyond radius R scales as
    R^(2 - alpha), so R = r0 * TAIL_FRACTION^(-1 / (alpha - 2)) keeps it below
    TAIL_FRACTION of the one beyond r0.  At least 100 r0.
    """
    return max(100. * net.r0, net.r0 * TAIL_FRACTION ** (-1. / (net.alpha - 2.)))


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo settings.

    Args:
        n_samples: number of independent draws (or episodes).
        sim_radius: radius of the simulated disk, None for `default_sim_radius`.
        seed: unsigned 64 bit seed.
        workers: number of threads computing blocks.
        block_size: draws per random stream.
    """

    n_samples: int = 100000
    sim_radius: float = None
    seed: int = 0
    workers: int = 1
    block_size: int = DEFAULT_BLOCK_SIZE

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1, got %r" % (self.n_samples,))
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64 bit integer, got %r" % (self.seed,))
        if self.workers < 1:
            raise ValueError("workers must be at least 1, got %r" % (self.workers,))
        if self.block_size < 1:
            raise ValueError("block_size must be at least 1, got %r" % (self.block_size,))

    def radius(self, net, attempts=1):
        """Resolve the simulated radius for *net*.

        Raises ValueError when a block of *attempts* draws per episode would
        hold more than `MAX_POINTS_PER_BLOCK` interferers on average.
        """
        radius = default_sim_radius(net) if self.sim_radius is None else self.sim_radius
        if not radius > net.r0:
            raise ValueError("sim_radius must exceed r0=%g, got %r" % (net.r0, radius))
        expected = net.lambda_ * np.pi * radius ** 2
        draws = min(self.block_size, self.n_samples) * attempts
        if expected * draws > MAX_POINTS_PER_BLOCK:
            raise ValueError("%.3g interferers expected per block of %d draws (radius %g, alpha %g), "
                             "the limit is %.3g" % (expected * draws, draws, radius, net.alpha,
                                                    MAX_POINTS_PER_BLOCK))
        if expected > MAX_EXPECTED_POINTS:
            warnings.warn("%.3g interferers expected per draw, simulation will be slow" % expected)
        return radius


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of a mean and its standard error.

    An estimate with no effective sample has a NaN mean and standard error.
    """

    mean: float
    std_error: float
    n_effective: int

    @property
    def has_data(self):
        return self.n_effective > 0

    def covers(self, value, n_sigma=3.):
        """Whether *value* lies within *n_sigma* standard errors of the mean."""
        return self.has_data and abs(value - self.mean) <= n_sigma * self.std_error


@dataclass(frozen=True)
class RetransmissionEstimates:
    """Estimates from one set of retransmission episodes."""

    success_prob: McEstimate
    attempts_mean_all: McEstimate
    attempts_mean_given_success: McEstimate
    drop_prob: McEstimate


def _sample_estimate(values):
    values = np.asarray(values, dtype=np.float64)
    size = values.size
    if size == 0:
        return McEstimate(np.nan, np.nan, 0)
    std = values.std(ddof=1) if size > 1 else 0.
    return McEstimate(values.mean(), std / np.sqrt(size), size)


def _block_rng(seed, block):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_sir(net, rng, size=None, sim_radius=None):
    """Draw SIR samples at the reference receiver.

    A draw without any interferer has an infinite SIR.  Returns a float if
    *size* is None, an array of *size* draws otherwise.
    """
    radius = default_sim_radius(net) if sim_radius is None else sim_radius
    nb_draws = 1 if size is None else size

    counts = rng.poisson(net.lambda_ * np.pi * radius ** 2, nb_draws)
    total = int(counts.sum())
    # uniform positions on the disk
    distances = radius * np.sqrt(rng.random(total))
    gains = rng.exponential(1., total)
    owner = np.repeat(np.arange(nb_draws), counts)
    interference = np.bincount(owner, weights=gains * distances ** -net.alpha, minlength=nb_draws)
    signal = net.power_ratio * rng.exponential(1., nb_draws) * net.r0 ** -net.alpha

    with np.errstate(divide="ignore"):
        sir = signal / interference
    if size is None:
        return float(sir[0])
    return sir


def _outage_block(beta, net, radius, seed, block, size):
    rng = _block_rng(seed, block)
    return sample_sir(net, rng, size, radius) <= beta


def _episode_block(beta, net, m, radius, seed, block, size):
    rng = _block_rng(seed, block)
    decoded = (sample_sir(net, rng, size * (m + 1), radius) > beta).reshape(size, m + 1)
    success = decoded.any(axis=1)
    attempts = np.where(success, decoded.argmax(axis=1) + 1, m + 1)
    return success, attempts


def _run_blocks(func, cfg, *args):
    """Evaluate *func* block by block and return the results in block order."""
    sizes = [min(cfg.block_size, cfg.n_samples - start)
             for start in range(0, cfg.n_samples, cfg.block_size)]
    tasks = [dask.delayed(func)(*args, cfg.seed, block, size)
             for block, size in enumerate(sizes)]
    LOG.debug("Running %d blocks on %d workers", len(tasks), cfg.workers)
    return dask.compute(*tasks, scheduler="threads", num_workers=cfg.workers)


def estimate_outage(beta, net, cfg):
    """Estimate the per-attempt outage probability P(SIR <= beta)."""
    radius = cfg.radius(net)
    outage = np.concatenate(_run_blocks(_outage_block, cfg, beta, net, radius))
    return _sample_estimate(outage)


def _episodes(beta, net, m, cfg):
    if int(m) != m or m < 0:
        raise ValueError("m must be a non-negative integer, got %r" % (m,))
    radius = cfg.radius(net, int(m) + 1)
    blocks = _run_blocks(_episode_block, cfg, beta, net, int(m), radius)
    success = np.concatenate([block[0] for block in blocks])
    attempts = np.concatenate([block[1] for block in blocks])
    return success, attempts


def _retransmission_estimates(success, attempts):
    return RetransmissionEstimates(success_prob=_sample_estimate(success),
                                   attempts_mean_all=_sample_estimate(attempts),
                                   attempts_mean_given_success=_sample_estimate(attempts[success]),
                                   drop_prob=_sample_estimate(~success))


def simulate_retransmissions(beta, net, m, cfg):
    """Simulate episodes of up to m + 1 attempts.

    The success-conditioned attempt mean has no data if no episode succeeded.
    """
    return _retransmission_estimates(*_episodes(beta, net, m, cfg))


def _throughput_ratio(rate, success, attempts):
    delivered = success.sum()
    if delivered == 0:
        return 0.
    # success rate over the attempt count of delivered packets
    return rate * delivered ** 2 / (success.size * attempts[success].sum())


def _check_batches(cfg):
    if cfg.n_samples < N_BATCHES:
        raise ValueError("Throughput estimation needs at least %d episodes" % N_BATCHES)


def _throughput_estimate(beta, success, attempts):
    rate = spectral_efficiency(beta)
    mean = _throughput_ratio(rate, success, attempts)
    batches = [_throughput_ratio(rate, success[idx], attempts[idx])
               for idx in np.array_split(np.arange(success.size), N_BATCHES)]
    std_error = np.std(batches, ddof=1) / np.sqrt(N_BATCHES)
    return McEstimate(float(mean), float(std_error), success.size)


def _ee_estimate(tput, beta, pm):
    power = total_power(beta, pm)
    return McEstimate(tput.mean / power, tput.std_error / power, tput.n_effective)


def estimate_throughput(point, cfg):
    """Estimate the link throughput at *point*.

    The standard error comes from `N_BATCHES` batch means over contiguous
    episode ranges.
    """
    _check_batches(cfg)
    return _throughput_estimate(point.beta, *_episodes(point.beta, point.net, point.proto.m, cfg))


def estimate_ee(point, pm, cfg):
    """Estimate the energy efficiency at *point*; the power term is deterministic."""
    return _ee_estimate(estimate_throughput(point, cfg), point.beta, pm)


@dataclass(frozen=True)
class LinkEstimates:
    """Episode, throughput and energy-efficiency estimates from a single run."""

    retransmissions: RetransmissionEstimates
    throughput: McEstimate
    energy_efficiency: McEstimate


def simulate_link(point, pm, cfg):
    """Simulate the episodes at *point* once and derive every link estimate from them.

    The estimates equal the ones of `simulate_retransmissions`,
    `estimate_throughput` and `estimate_ee` with the same configuration.
    """
    _check_batches(cfg)
    success, attempts = _episodes(point.beta, point.net, point.proto.m, cfg)
    tput = _throughput_estimate(point.beta, success, attempts)
    return LinkEstimates(retransmissions=_retransmission_estimates(success, attempts),
                         throughput=tput,
                         energy_efficiency=_ee_estimate(tput, point.beta, pm))
