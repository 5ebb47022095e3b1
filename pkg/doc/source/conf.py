# -*- coding: utf-8 -*-
#
# python-mtclink documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import os
import sys
from datetime import datetime

# The package itself is imported by autodoc, numpy and scipy must be installed.
sys.path.insert(0, os.path.abspath('../../'))

from mtclink import __version__  # noqa

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest']

templates_path = ['sphinx_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'python-mtclink'
copyright = u'2026-%d, Python-mtclink developers' % datetime.utcnow().year

# The short X.Y version.
version = __version__.split('+')[0]
# The full version, including alpha/beta/rc tags.
release = __version__

exclude_patterns = []

pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'

#html_static_path = ['sphinx_static']

htmlhelp_basename = 'python-mtclinkdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'python-mtclink.tex', u'python-mtclink Documentation',
   u'Python-mtclink developers', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'python-mtclink', u'python-mtclink Documentation',
     [u'Python-mtclink developers'], 1)
]
