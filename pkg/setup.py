"""Build script for the optional compiled kernels of lipext.

The package is fully functional without the extension; ``lipext.kernels``
falls back to the numpy implementation when ``lipext._ckernels`` is missing.
"""

import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LIPEXT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "lipext._ckernels",
                    ["src/lipext/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
