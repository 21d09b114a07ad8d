"""Build hook for the optional compiled kernels.

If Cython or a C compiler is unavailable the package installs without the
extension and ``ldpc_gauge.kernels`` falls back to pure Python.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "ldpc_gauge._kernels",
                ["src/ldpc_gauge/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
