import os

from setuptools import setup

ext_modules = []
if not os.environ.get("AMICABLE_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "amicable._kernels",
                    ["src/amicable/_kernels.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-Python only, the package
        # falls back to amicable._kernels_py at import time.
        ext_modules = []

setup(ext_modules=ext_modules)
