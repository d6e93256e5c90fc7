#!/usr/bin/env python

import os.path as osp
import re
from pathlib import Path

from setuptools import find_packages, setup

COMMANDS = ["table", "euler", "class", "chamber", "wallcross", "verify", "ratio"]
this_dir = Path(__file__).parent


def read(*parts):
    return open(osp.join(this_dir, *parts)).read()


def find_version(*parts):
    vers_file = read(*parts)
    match = re.search(r'^__version__ = ["\']([^"\']*)["\']', vers_file, re.M)
    if match:
        return match.group(1)
    raise RuntimeError("Unable to find version string.")


entry_points = ["rubbermaps = rubbermaps.cli:main"]
for cmd in COMMANDS:
    module = "class_" if cmd == "class" else cmd
    entry_points.append(f"rubbermaps-{cmd} = rubbermaps.cli.{module}:main")
setup(
    name="rubbermaps",
    version=find_version("src/rubber_system", "__init__.py"),
    author="The rubbermaps developers",
    description=(
        "Exact Euler characteristics and Grothendieck classes of genus zero "
        "rubber stable maps"
    ),
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    include_package_data=True,
    license="BSD-3-Clause",
    packages=find_packages("src"),
    package_dir={"": "src"},
    install_requires=[
        "appdirs",
        "humanize",
        "lazy-import",
        "pandas",
        "rich",
        "setuptools",
        "toml",
        "toolz",
    ],
    extras_require={
        "docs": [
            "furo",
            "recommonmark",
            "sphinx",
            "sphinx-copybutton",
        ],
        "test": [
            "black",
            "hypothesis",
            "mock",
            "mypy",
            "pytest",
            "pytest-env",
            "pytest-cov",
            "types-mock",
            "types-toml",
        ],
    },
    entry_points={"console_scripts": entry_points},
    python_requires=">=3.9",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
