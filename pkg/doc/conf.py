#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# semnet_analyzer documentation build configuration file.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))


# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.viewcode',
              'sphinx.ext.mathjax',
              'sphinx.ext.napoleon',
              'sphinx.ext.doctest',
              'sphinx.ext.intersphinx']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'semnet_analyzer'
copyright = '2026, the semnet_analyzer developers'
author = 'the semnet_analyzer developers'

version = '0.1.0'
release = '0.1.0'

exclude_patterns = ['Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

napoleon_numpy_docstring = True
napoleon_google_docstring = False


# -- Options for HTML output ----------------------------------------------

import sphinx_rtd_theme
html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

htmlhelp_basename = 'semnet_analyzerdoc'


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'semnet_analyzer', 'semnet_analyzer Documentation', [author], 1)
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable/', None),
                       'pandas': ('https://pandas.pydata.org/docs/', None)}
