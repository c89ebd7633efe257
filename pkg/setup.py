"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
twin of the kernel module is selected at import time), so a failed or
skipped extension build is not fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("matprime._kernel_cy", ["src/matprime/_kernel_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
