"""Optional build of the compiled identity kernel.

    python setup.py build_ext --inplace

The package is fully functional without it (the pure kernel is selected at
import time); the extension speeds up the large streaming identity checks.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        ["src/hhk/_kernels/_speed.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
