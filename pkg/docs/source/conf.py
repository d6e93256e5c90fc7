# Configuration file for the Sphinx documentation builder.
#
# This file only contains a selection of the most common options. For a full
# list see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys
from datetime import date

from recommonmark.parser import CommonMarkParser

sys.path.insert(0, os.path.abspath(os.path.join("..", "..", "src")))
os.environ.setdefault(
    "RUBBER_SYSTEM_CONFIG_FILE",
    os.path.abspath(
        os.path.join(
            "..", "..", "src", "rubber_system", "tests", "mocks", "rubber_system.toml"
        )
    ),
)

from rubber_system import __version__

# -- Project information -----------------------------------------------------

project = "rubbermaps"
copyright = f"{date.today().year}, The rubbermaps developers"
author = "The rubbermaps developers"

# The full version, including alpha/beta/rc tags
release = __version__

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",
    "recommonmark",
    "sphinx_copybutton",
]

templates_path = ["_templates"]
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"
html_theme_options = {
    "light_css_variables": {
        "color-brand-primary": "tomato",
    },
}

source_parsers = {
    ".md": CommonMarkParser,
}

source_suffix = [".rst", ".md"]
intersphinx_mapping = {"python": ("https://docs.python.org/3", None)}
