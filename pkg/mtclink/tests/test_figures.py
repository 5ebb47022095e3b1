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

"""Tests for the figure data and the parameter sweeps."""

import unittest

import numpy as np

from mtclink import figures, model, optimizer
from mtclink.params import NetworkParams, PowerModel, ProtocolParams

NET = NetworkParams(0.01)


class TestGrid(unittest.TestCase):

    def test_geometric(self):
        grid = figures.make_grid(1e-3, 1., 4)
        np.testing.assert_allclose(grid, [1e-3, 1e-2, 1e-1, 1.])

    def test_linear(self):
        np.testing.assert_allclose(figures.make_grid(0., 1., 5, "linear"), [0., 0.25, 0.5, 0.75, 1.])

    def test_invalid(self):
        self.assertRaises(ValueError, figures.make_grid, 0., 1., 5)
        self.assertRaises(ValueError, figures.make_grid, 1., 2., 0)
        self.assertRaises(ValueError, figures.make_grid, 1., 2., 5, "cubic")


class TestFigures(unittest.TestCase):

    def test_unknown_figure(self):
        self.assertRaises(ValueError, figures.reproduce_figure, "Z9")

    def test_attempt_counts(self):
        data = figures.reproduce_figure("E1")
        self.assertEqual(data.attrs["figure"], "E1")
        self.assertEqual(data.sizes["m"], figures.FIGURE_M_MAX + 1)
        self.assertEqual(len(data.data_vars), 6)
        for eps in figures.DEFAULT_EPSILONS:
            exact = data["exact_epsilon=%g" % eps].values
            approx = data["approx_epsilon=%g" % eps].values
            self.assertTrue(np.all(exact <= approx * (1 + 1e-12)))
            self.assertEqual(exact[0], 1.)

    def test_single_requirement(self):
        data = figures.reproduce_figure("E3", epsilon=0.05)
        self.assertEqual(list(data.data_vars), ["error_epsilon=0.05"])
        self.assertEqual(data.sizes["m"], 51)

    def test_epsilon_axis(self):
        data = figures.reproduce_figure("E4", points=12)
        self.assertEqual(data.sizes["epsilon"], 12)
        self.assertEqual(sorted(data.data_vars), ["error_m=1", "error_m=10", "error_m=5"])
        self.assertEqual(data.attrs["logx"], 1)

    def test_throughput_versus_m(self):
        data = figures.reproduce_figure("T1")
        curve = data["T_lambda=0.01"].values
        np.testing.assert_allclose(curve, optimizer.throughput_by_m(0.02, NET, figures.FIGURE_M_MAX))

    def test_optimal_throughput(self):
        data = figures.reproduce_figure("T2", points=8)
        self.assertEqual(data.sizes["lambda"], 8)
        self.assertEqual(len(data.data_vars), 5)
        np.testing.assert_allclose(data["Tstar_m=inf"].values, data["Tstar_m=0"].values, rtol=1e-6, atol=0)
        dense = data["lambda"].values >= 1e-3
        self.assertTrue(np.all(data["Tstar_epsilon=0.1"].values[dense]
                               >= data["Tstar_m=0"].values[dense] * (1 - 1e-9)))
        # at the sparsest density the unconstrained extreme optimum is larger
        self.assertLess(data["Tstar_epsilon=0.1"].values[0], data["Tstar_m=0"].values[0])

    def test_energy_efficiency_versus_beta(self):
        data = figures.reproduce_figure("EE2", points=30)
        self.assertEqual(data.sizes["beta"], 30)
        self.assertTrue(np.all(data["EE_lambda=0.01"].values > 0))

    def test_shape_follows_network(self):
        net = NetworkParams(0.01, alpha=3.)
        base = figures.reproduce_figure("T1")
        other = figures.reproduce_figure("T1", net=net)
        self.assertFalse(np.allclose(base["T_lambda=0.01"].values, other["T_lambda=0.01"].values))

    def test_optimal_energy_efficiency_versus_m(self):
        pm = PowerModel()
        data = figures.reproduce_figure("EE4-m", pm=pm)
        curve = data["EEstar_lambda=0.01"].values
        at_beta_star = figures.reproduce_figure("EE3", pm=pm)["EE_lambda=0.01"].values
        self.assertTrue(np.all(curve >= at_beta_star * (1 - 1e-9)))


class TestSweep(unittest.TestCase):

    def test_beta_axis(self):
        proto = ProtocolParams(2, 0.01)
        grid = np.geomspace(0.1, 10., 7)
        data = figures.sweep("beta", grid, NET, proto, PowerModel(), 1.)
        self.assertEqual(data.sizes["beta"], 7)
        self.assertTrue(np.all(np.diff(data["outage"].values) > 0))
        np.testing.assert_allclose(data["outage"].values, model.outage_probability(grid, NET))
        self.assertEqual(np.unique(data["beta_star"].values).size, 1)

    def test_m_axis(self):
        data = figures.sweep("m", [0, 0.4, 1.2, 2., 2.2], NET, ProtocolParams(1, 0.01), PowerModel(), 1.)
        np.testing.assert_array_equal(data["m"].values, [0, 1, 2])
        self.assertTrue(np.all(np.diff(data["beta_star"].values) > 0))
        self.assertEqual(data.attrs["logx"], 0)

    def test_lambda_axis(self):
        data = figures.sweep("lambda", [1e-3, 1e-2, 1e-1], NET, ProtocolParams(1, 0.01), PowerModel(), 1.)
        self.assertTrue(np.all(np.diff(data["throughput"].values) < 0))
        self.assertAlmostEqual(float(data["beta_star"].values[1]), 4.55844, places=4)

    def test_invalid(self):
        self.assertRaises(ValueError, figures.sweep, "alpha", [3.], NET, ProtocolParams(1, 0.01), PowerModel(), 1.)
        self.assertRaises(ValueError, figures.sweep, "beta", [], NET, ProtocolParams(1, 0.01), PowerModel(), 1.)


def suite():
    """The suite for the figure data"""
    loader = unittest.TestLoader()
    mysuite = unittest.TestSuite()
    mysuite.addTest(loader.loadTestsFromTestCase(TestGrid))
    mysuite.addTest(loader.loadTestsFromTestCase(TestFigures))
    mysuite.addTest(loader.loadTestsFromTestCase(TestSweep))

    return mysuite


if __name__ == "__main__":
    unittest.main()
