"""Build script: compiles the optional fast kernel extension.

The extension is marked optional so environments without a C toolchain (or
without Cython) still get a working install; sqsieve.backend then falls back
to the pure NumPy kernels.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "sqsieve._fastcore",
                ["src/sqsieve/_fastcore.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
