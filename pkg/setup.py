import os

from setuptools import setup

# The compiled kernels are optional: if Cython or a C compiler is missing,
# the package falls back to the pure-Python implementations at import time.
ext_modules = []
if not os.environ.get("PLOCAL_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("plocal._speedups", ["src/plocal/_speedups.pyx"])],
            language_level="3",
        )
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules)
