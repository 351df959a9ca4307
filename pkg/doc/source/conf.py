# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# Only a selection of the common options is set. For a full list see
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))


# -- Project information -----------------------------------------------------

project = "pyErfSparse"
copyright = "2026, pyErfSparse developers"
author = "pyErfSparse developers"

version = "1.0"
release = "1.0"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
]

# numba is optional; document the pure Python kernels without it
autodoc_mock_imports = ["numba"]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"
language = "en"
exclude_patterns = []
pygments_style = None


# -- Options for HTML output -------------------------------------------------

html_theme = "alabaster"
htmlhelp_basename = "pyErfSparsedoc"


# -- Options for LaTeX output ------------------------------------------------

latex_elements = {}
latex_documents = [
    (master_doc, "pyErfSparse.tex", "pyErfSparse Documentation", author, "manual")
]


# -- Options for manual page output ------------------------------------------

man_pages = [(master_doc, "erfsparse", "pyErfSparse Documentation", [author], 1)]


# -- Options for Texinfo output ----------------------------------------------

texinfo_documents = [
    (
        master_doc,
        "pyErfSparse",
        "pyErfSparse Documentation",
        author,
        "pyErfSparse",
        "Sparse signal recovery with the error function penalty.",
        "Miscellaneous",
    )
]

epub_title = project
epub_exclude_files = ["search.html"]
