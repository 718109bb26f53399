import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # fallback kernels still work without the extension
    cythonize = None

openmp = [] if os.environ.get("PRDENSE_NO_OPENMP") else ["-fopenmp"]

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "prdense._kernels",
                ["src/prdense/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3", *openmp],
                extra_link_args=openmp,
                language="c++",
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
