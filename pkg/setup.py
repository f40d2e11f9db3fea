"""Build hook: compile the optional census kernel if Cython is around.

The package is pure Python; `brickforge._kernel` falls back to a Python
implementation when the extension is missing, so any failure here is
non-fatal by design.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "brickforge._kernel._core",
                ["src/brickforge/_kernel/_core.pyx"],
            )
        ],
        language_level=3,
    )
except Exception:
    # No Cython (or no pyx yet): install the pure-Python package as-is.
    ext_modules = []

setup(ext_modules=ext_modules)
