"""Build the optional Cython kernels; the package falls back to pure Python without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: install the pure-Python package only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("akc._kernels", ["src/akc/_kernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
