# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full list see the
# documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

from evostream.version import __version__


# -- Project information -----------------------------------------------------

project = 'evostream'
copyright = '2026, evostream contributors'
author = 'evostream contributors'

version = __version__
release = __version__


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.githubpages',
    'sphinx.ext.mathjax',
    'sphinx_autodoc_typehints',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

language = 'en'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = None


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_static_path = []  # ['_static']

htmlhelp_basename = 'evostreamdoc'


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'evostream', 'evostream Documentation',
     [author], 1)
]


# -- Extension configuration -------------------------------------------------

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
}
autoclass_content = 'both'
autodoc_inherit_docstrings = False
