# Sphinx configuration of the ergolearn documentation.

import os
import sys

import sphinx_rtd_theme

sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'ergolearn'
copyright = '2026, ergolearn developers'
author = 'ergolearn developers'

version = '1.0.0'
release = '1.0.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'autoapi.extension'
]

# API pages are written by hand under api/, autoapi only resolves references
autoapi_dirs = ['../ergolearn']
autoapi_generate_api_docs = False

master_doc = 'index'
exclude_patterns = ['_build']

autodoc_member_order = 'bysource'

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_theme_options = {
    'collapse_navigation': False
}
