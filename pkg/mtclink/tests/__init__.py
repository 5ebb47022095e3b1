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

"""The tests package"""

import doctest
import os
import unittest

from mtclink import model
from mtclink.tests import (test_cli,
                           test_experiments,
                           test_figures,
                           test_model,
                           test_optimizer,
                           test_params,
                           test_simulator)

CI = os.environ.get("CI", False)
DOC_INDEX = os.path.join(os.path.dirname(__file__), "..", "..", "doc", "source", "index.rst")


def suite():
    """The global test suite.
    """
    mysuite = unittest.TestSuite()
    if not CI and os.path.exists(DOC_INDEX):
        # Test sphinx documentation pages:
        mysuite.addTests(doctest.DocFileSuite(DOC_INDEX, module_relative=False))
    # Test the documentation strings
    mysuite.addTests(doctest.DocTestSuite(model))

    # Use the unittests also
    mysuite.addTests(test_params.suite())
    mysuite.addTests(test_model.suite())
    mysuite.addTests(test_optimizer.suite())
    mysuite.addTests(test_simulator.suite())
    mysuite.addTests(test_figures.suite())
    mysuite.addTests(test_experiments.suite())
    mysuite.addTests(test_cli.suite())
    return mysuite


if __name__ == '__main__':
    unittest.TextTestRunner(verbosity=2).run(suite())
