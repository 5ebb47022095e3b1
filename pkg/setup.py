#!/usr/bin/env python
# -*- coding: utf-8 -*-

# Copyright (c) 2026 Python-mtclink developers

# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Setting up the mtclink project.
"""

import os

from setuptools import setup

requirements = ['numpy', 'scipy', 'pandas', 'xarray', 'dask']
test_requires = []


def get_version():
    """Read the version from mtclink/version.py without importing the package."""
    namespace = {}
    with open(os.path.join(os.path.dirname(__file__), 'mtclink', 'version.py')) as fd:
        exec(fd.read(), namespace)
    return namespace['__version__']


if __name__ == "__main__":
    setup(name='python-mtclink',
          version=get_version(),
          description='Throughput and energy efficiency of unlicensed machine-type links',
          author='Python-mtclink developers',
          classifiers=["Development Status :: 4 - Beta",
                       "Intended Audience :: Science/Research",
                       "License :: OSI Approved :: GNU General Public License v3 " +
                       "or later (GPLv3+)",
                       "Operating System :: OS Independent",
                       "Programming Language :: Python",
                       "Topic :: Scientific/Engineering"],
          packages=['mtclink', 'mtclink.tests'],
          python_requires='>=3.8',
          install_requires=requirements,
          entry_points={'console_scripts': ['mtclink = mtclink.cli:main']},
          test_suite='mtclink.tests.suite',
          tests_require=test_requires,
          zip_safe=False
          )
