"""Builds the optional compiled span-scan kernel.

The package works without the extension: explmine.spans falls back to the
pure-Python kernel when the compiled module is missing. Set EXPLMINE_NO_EXT=1
to skip compilation entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EXPLMINE_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/explmine/_kernel.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
