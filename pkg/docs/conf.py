# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../'))

import altbase


# -- Project information -----------------------------------------------------

project = 'altbase'
copyright = '2022, the alternate-base-lib developers'
author = 'the alternate-base-lib developers'
version = str(altbase.__version__)


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
    'sphinx_copybutton',
]

templates_path = ['_templates']

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', '../altbase/tests']


# -- Options for HTML output -------------------------------------------------

html_theme = "furo"

html_theme_options = {
    'sidebar_hide_name': False,
}

html_static_path = []

napoleon_google_docstring = False
napoleon_use_ivar = True
napoleon_use_admonition_for_examples = True

autodoc_typehints = "none"
