# Configuration file for the Sphinx documentation builder.
#
# For the full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../..'))
import _version
import datetime


# -- Project information -----------------------------------------------------

project = _version.__lib_name__
copyright = f'{datetime.date.today().year}, {_version.__author__}'
author = _version.__author__

# The full version, including alpha/beta/rc tags
release = _version.__version__
version = release


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx_rtd_theme',
    'sphinx_autodoc_typehints',
    'enum_tools.autoenum',
]

autodoc_typehints = 'description'
autoclass_content = 'both'

templates_path = ['_templates']
exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
