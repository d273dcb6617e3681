"""Build script: compiles the accelerated kernel extension when possible.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure here simply produces a pure-Python
install.  Set POLYBALL_NO_EXT=1 to skip the extension build explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("POLYBALL_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "polyball._kernels_c",
                    ["src/polyball/_kernels_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
