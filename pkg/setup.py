"""Build script: compiles the Cython simulation kernels when possible.

The compiled extension (agesampler._kernel_cy) is optional. If Cython or a
C compiler is unavailable the package installs anyway and falls back to the
pure-Python kernels in agesampler._kernel_py at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "agesampler._kernel_cy",
                ["src/agesampler/_kernel_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    print("agesampler: Cython/numpy headers not found, building without the compiled kernels")

setup(ext_modules=ext_modules)
