import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "srg._kernels.native",
        ["src/srg/_kernels/native.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    # Without Cython the install still works; srg falls back to the pure
    # Python kernels at import time.
    ext_modules=cythonize(extensions, language_level=3) if cythonize else [],
)
