"""Build script: compiles the optional search kernel extension.

The extension is marked optional so the package still installs (and falls
back to the pure-Python kernel) on machines without a C toolchain.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "perturbed_ramsey._kernels",
                ["src/perturbed_ramsey/_kernels.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
