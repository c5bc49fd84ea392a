# Sphinx configuration for the specbound documentation.
import os
import sys

# Document the working tree rather than any installed copy.
sys.path.insert(0, os.path.abspath(".."))

import specbound  # noqa: E402

# -- General configuration ------------------------------------------------

extensions = [
    "alabaster",
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinx.ext.doctest",
    "sphinx.ext.coverage",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "specbound"
copyright = "2023, specbound developers"

version = specbound.__version__
release = specbound.__version__

exclude_patterns = ["_build"]
pygments_style = "sphinx"

# -- Options for HTML output ----------------------------------------------

import alabaster  # noqa: E402

html_theme_path = [alabaster.get_path()]
html_theme = "alabaster"
html_sidebars = {
    "**": [
        "about.html",
        "navigation.html",
        "searchbox.html",
    ]
}
html_theme_options = {
    "description": "Check spectral-distance bounds for pairs of matrices",
}

htmlhelp_basename = "specbounddoc"

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    ("index", "specbound.tex", "specbound Documentation", "specbound developers", "manual"),
]

# -- Options for manual page output ---------------------------------------

man_pages = [("index", "specbound", "specbound Documentation", ["specbound developers"], 1)]
