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

"""Tests for the closed-form link model."""

import unittest
import warnings

import numpy as np

from mtclink import model
from mtclink.params import LinkPoint, NetworkParams, PowerModel, ProtocolParams

NET = NetworkParams(0.01)
# threshold at which P_out = 0.1 for lambda = 0.01, alpha = 4
BETA_P01 = 4.558440


def _second_difference(func, beta):
    step = 1e-4 * beta
    return (func(beta + step) - 2 * func(beta) + func(beta - step)) / step ** 2


def _random_cases(size, seed=0):
    rng = np.random.default_rng(seed)
    epsilons = 10 ** rng.uniform(-4, np.log10(0.4), size)
    caps = rng.integers(0, 21, size)
    densities = 10 ** rng.uniform(-4, 0, size)
    betas = 10 ** rng.uniform(-1, 2, size)
    return zip(epsilons, caps, densities, betas)


class TestOutage(unittest.TestCase):

    def test_geometry_constant(self):
        self.assertAlmostEqual(model.geometry_constant_k(NET), np.pi ** 2 / 2, places=12)
        self.assertAlmostEqual(model.geometry_constant_k(NetworkParams(0.01, r0=2.)), 19.7392088, places=6)
        # both gamma factors tend to 1
        self.assertAlmostEqual(model.geometry_constant_k(NetworkParams(0.01, alpha=1e6)), np.pi, places=4)

    def test_outage_value(self):
        self.assertAlmostEqual(model.outage_probability(1., NET), 0.048150, places=6)
        self.assertAlmostEqual(model.survival_probability(1., NET), 1 - 0.048150, places=6)

    def test_outage_limits(self):
        self.assertLess(model.outage_probability(1e-12, NET), 1e-7)
        self.assertLess(model.outage_probability(1., NetworkParams(1e-12)), 1e-10)

    def test_outage_monotonic(self):
        betas = np.geomspace(1e-3, 1e3, 50)
        self.assertTrue(np.all(np.diff(model.outage_probability(betas, NET)) > 0))
        densities = np.geomspace(1e-4, 1., 20)
        values = [model.outage_probability(1., NET.with_density(lam)) for lam in densities]
        self.assertTrue(np.all(np.diff(values) > 0))
        values = [model.outage_probability(1., NetworkParams(0.01, r0=r0)) for r0 in np.linspace(0.5, 3, 20)]
        self.assertTrue(np.all(np.diff(values) > 0))
        values = [model.outage_probability(1., NetworkParams(0.01, power_ratio=ratio))
                  for ratio in np.geomspace(0.1, 10, 20)]
        self.assertTrue(np.all(np.diff(values) < 0))

    def test_power_ratio_scales_threshold(self):
        scaled = NetworkParams(0.01, power_ratio=2.)
        self.assertAlmostEqual(model.outage_probability(2., scaled), model.outage_probability(1., NET), places=15)

    def test_threshold_from_survival(self):
        self.assertAlmostEqual(model.threshold_from_survival(0.9, NET), BETA_P01, places=5)
        self.assertAlmostEqual(model.survival_probability(model.threshold_from_survival(0.3, NET), NET), 0.3,
                               places=12)

    def test_success_probability(self):
        point = LinkPoint(1., NET, ProtocolParams(1, 0.01))
        self.assertAlmostEqual(model.success_probability(point), 0.997682, places=6)
        point = LinkPoint(1., NET, ProtocolParams(0, 0.01))
        self.assertAlmostEqual(model.success_probability(point), 1 - 0.048150, places=6)
        values = [model.success_probability(LinkPoint(1., NET, ProtocolParams(m, 0.01))) for m in range(10)]
        self.assertTrue(np.all(np.diff(values) >= 0))


class TestAttempts(unittest.TestCase):

    def test_exact_values(self):
        self.assertAlmostEqual(model.attempts_mean_exact(ProtocolParams(1, 0.01)), 0.972 / 0.891, places=12)
        for epsilon in (1e-4, 0.01, 0.3):
            self.assertEqual(model.attempts_mean_exact(ProtocolParams(0, epsilon)), 1.)
        value = model.attempts_mean_exact(ProtocolParams(4, 0.1))
        self.assertTrue(1 < value < 5)

    def test_approx_values(self):
        self.assertAlmostEqual(model.attempts_mean_approx(ProtocolParams(1, 0.01)), 1.1, places=12)
        self.assertEqual(model.attempts_mean_approx(ProtocolParams(0, 0.2)), 1.)
        self.assertAlmostEqual(model.attempts_mean_approx(ProtocolParams(1, 1e-14)), 1., places=6)

    def test_approx_warns_for_loose_requirement(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            model.attempts_mean_approx(ProtocolParams(2, 0.5))
        self.assertEqual(len(caught), 1)

    def test_error_values(self):
        self.assertAlmostEqual(model.approximation_error(ProtocolParams(1, 0.01)), 0.0083333, places=6)
        self.assertEqual(model.approximation_error(ProtocolParams(0, 0.3)), 0.)
        self.assertAlmostEqual(model.approximation_error(ProtocolParams(50, 0.1)), 0.2, delta=0.02)

    def test_ordering(self):
        for epsilon in np.geomspace(1e-4, 0.9, 100):
            for m in range(20):
                proto = ProtocolParams(m, epsilon)
                exact = model.attempts_mean_exact(proto)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    approx = model.attempts_mean_approx(proto)
                self.assertLessEqual(1., exact + 1e-12)
                self.assertLessEqual(exact, approx * (1 + 1e-12))
                self.assertLessEqual(approx, (m + 1) * (1 + 1e-12))

    def test_error_monotonic(self):
        epsilons = np.geomspace(1e-4, 0.4, 40)
        errors = np.array([[model.approximation_error(ProtocolParams(m, eps)) for eps in epsilons]
                           for m in range(21)])
        self.assertTrue(np.all(np.diff(errors, axis=0) >= -1e-12))
        self.assertTrue(np.all(np.diff(errors, axis=1) >= -1e-12))

    def test_extreme_attempts(self):
        self.assertAlmostEqual(model.attempts_mean_extreme(0.1, 1), 1.0909090909, places=9)
        self.assertEqual(model.attempts_mean_extreme(0.3, 0), 1.)
        self.assertAlmostEqual(model.attempts_mean_extreme(0.3, 2000), 1 / 0.7, places=12)
        self.assertRaises(ValueError, model.attempts_mean_extreme, 0., 1)
        self.assertRaises(ValueError, model.attempts_mean_extreme, 1., 1)
        self.assertRaises(ValueError, model.attempts_mean_extreme, 0.5, -1)

    def test_extreme_matches_exact(self):
        for p_out in (0.05, 0.2, 0.5):
            for m in (1, 3, 8):
                proto = ProtocolParams(m, p_out ** (m + 1))
                self.assertAlmostEqual(model.attempts_mean_extreme(p_out, m),
                                       model.attempts_mean_exact(proto), places=10)

    def test_truncated_mean(self):
        self.assertAlmostEqual(model.attempts_mean_truncated(0.1, 2), 1.11, places=12)
        self.assertEqual(model.attempts_mean_truncated(0.4, 0), 1.)
        self.assertEqual(model.attempts_mean_truncated(0., 5), 1.)


class TestThroughput(unittest.TestCase):

    def test_example_value(self):
        proto = ProtocolParams(1, 0.01)
        beta = model.constrained_threshold(proto, NET)
        self.assertAlmostEqual(beta, BETA_P01, places=5)
        self.assertAlmostEqual(model.throughput(LinkPoint(beta, NET, proto)), 2.2457, places=3)
        self.assertAlmostEqual(model.throughput_epsilon_form(beta, proto), 2.2457, places=3)

    def test_small_beta(self):
        point = LinkPoint(1e-12, NET, ProtocolParams(3, 0.1))
        self.assertLess(model.throughput(point), 1e-11)

    def test_epsilon_form_limit(self):
        proto = ProtocolParams(1, 1e-14)
        self.assertAlmostEqual(model.throughput_epsilon_form(7., proto), 3., places=5)

    def test_epsilon_form_consistency(self):
        for epsilon, m, lam, _ in _random_cases(20):
            net = NET.with_density(lam)
            proto = ProtocolParams(int(m), epsilon)
            beta = model.constrained_threshold(proto, net)
            general = model.throughput(LinkPoint(beta, net, proto))
            self.assertLess(abs(model.throughput_epsilon_form(beta, proto) - general), 1e-12 * general)

    def test_printed_success_factor(self):
        proto = ProtocolParams(3, 0.1)
        ratio = model.throughput_epsilon_form(2., proto, as_printed=True) / model.throughput_epsilon_form(2., proto)
        self.assertAlmostEqual(ratio, (1 - 0.1 ** 4) / 0.9, places=12)

    def test_extreme_value(self):
        self.assertAlmostEqual(model.throughput_extreme(1., NET), 0.951850, places=5)

    def test_extreme_identity(self):
        for beta in (0.01, 1., 4.5, 80.):
            self.assertEqual(model.throughput(LinkPoint(beta, NET, ProtocolParams(0, 0.1))),
                             model.throughput_extreme(beta, NET))
            self.assertAlmostEqual(model.throughput(LinkPoint(beta, NET, ProtocolParams(10000, 0.1))),
                                   model.throughput_extreme(beta, NET), places=6)

    def test_second_derivative(self):
        proto = ProtocolParams(1, 0.01)
        for beta in (0.1, 1., 10., 100.):
            analytic = model.d2_throughput_dbeta2(beta, proto)
            numeric = _second_difference(lambda b: model.throughput_epsilon_form(b, proto), beta)
            self.assertLess(analytic, 0)
            self.assertLess(abs(analytic - numeric), 1e-4 * abs(analytic))

    def test_second_derivative_random_points(self):
        for epsilon, m, _, beta in _random_cases(20, seed=3):
            for as_printed in (False, True):
                proto = ProtocolParams(int(m), epsilon)
                analytic = model.d2_throughput_dbeta2(beta, proto, as_printed)
                numeric = _second_difference(lambda b: model.throughput_epsilon_form(b, proto, as_printed), beta)
                self.assertLess(abs(analytic - numeric), 1e-4 * abs(analytic))

    def test_second_derivative_sign(self):
        for epsilon, m, _, beta in _random_cases(1000, seed=1):
            self.assertLess(model.d2_throughput_dbeta2(beta, ProtocolParams(int(m), epsilon)), 0)


class TestEnergyEfficiency(unittest.TestCase):

    def test_total_power(self):
        pm = PowerModel()
        self.assertAlmostEqual(model.total_power(BETA_P01, pm), 13.2342, places=4)
        self.assertAlmostEqual(model.total_power(1e-15, pm), 0.2101, places=12)

    def test_example_value(self):
        proto = ProtocolParams(1, 0.01)
        beta = model.constrained_threshold(proto, NET)
        self.assertAlmostEqual(model.energy_efficiency(LinkPoint(beta, NET, proto), PowerModel()), 0.16969,
                               places=4)
        self.assertAlmostEqual(model.energy_efficiency_epsilon_form(beta, proto, NET, PowerModel()), 0.16969,
                               places=4)

    def test_power_per_bit(self):
        pm = PowerModel()
        self.assertAlmostEqual(model.power_consumption_per_bit(1., 2, pm), 3 * (1 / 0.35 + 0.2101), places=12)

    def test_concave_in_beta(self):
        proto = ProtocolParams(5, 0.001)
        pm = PowerModel()
        betas = np.linspace(0.1, 100., 200)
        values = model.energy_efficiency_epsilon_form(betas, proto, NET, pm)
        self.assertTrue(np.all(np.diff(values, 2) < 0))

    def test_second_derivative(self):
        proto = ProtocolParams(5, 0.001)
        pm = PowerModel()
        beta = model.constrained_threshold(proto, NET)
        analytic = model.d2_ee_dbeta2(beta, proto, NET, pm)
        numeric = _second_difference(lambda b: model.energy_efficiency_epsilon_form(b, proto, NET, pm), beta)
        self.assertLess(analytic, 0)
        self.assertLess(abs(analytic - numeric), 1e-3 * abs(analytic))

    def test_second_derivative_random_points(self):
        pm = PowerModel()
        for epsilon, m, lam, beta in _random_cases(20, seed=4):
            proto = ProtocolParams(int(m), epsilon)
            net = NET.with_density(lam)
            analytic = model.d2_ee_dbeta2(beta, proto, net, pm)
            numeric = _second_difference(lambda b: model.energy_efficiency_epsilon_form(b, proto, net, pm), beta)
            self.assertLess(abs(analytic - numeric), 1e-4 * abs(analytic))

    def test_second_derivative_sign(self):
        pm = PowerModel()
        for epsilon, m, lam, beta in _random_cases(1000, seed=2):
            self.assertLess(model.d2_ee_dbeta2(beta, ProtocolParams(int(m), epsilon), NET.with_density(lam), pm), 0)

    def test_denser_is_more_efficient(self):
        proto = ProtocolParams(5, 0.001)
        pm = PowerModel()
        for beta in (1., 10., 100.):
            self.assertGreater(model.energy_efficiency_epsilon_form(beta, proto, NET.with_density(0.1), pm),
                               model.energy_efficiency_epsilon_form(beta, proto, NET.with_density(0.001), pm))


def suite():
    """The suite for the link model"""
    loader = unittest.TestLoader()
    mysuite = unittest.TestSuite()
    mysuite.addTest(loader.loadTestsFromTestCase(TestOutage))
    mysuite.addTest(loader.loadTestsFromTestCase(TestAttempts))
    mysuite.addTest(loader.loadTestsFromTestCase(TestThroughput))
    mysuite.addTest(loader.loadTestsFromTestCase(TestEnergyEfficiency))

    return mysuite


if __name__ == "__main__":
    unittest.main()
