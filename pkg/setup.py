"""Build script: compiles the optional Monte Carlo kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so any failure to build or import Cython only degrades
performance, never functionality.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the compiled kernels failed ({exc!r}); "
            "falling back to the pure numpy implementation.",
            file=sys.stderr,
        )


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        OptionalBuildExt._warn(exc)
        return []
    npy_root = os.path.dirname(os.path.dirname(numpy.get_include()))
    ext = Extension(
        "adhocsinr.kernels._speedups",
        ["src/adhocsinr/kernels/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        library_dirs=[os.path.join(npy_root, "random", "lib")],
        libraries=["npyrandom"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # -ffp-contract=off: the fallback kernel promises bitwise-identical
        # samples, FMA contraction would break that.
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level=3)


setup(cmdclass={"build_ext": OptionalBuildExt}, ext_modules=extensions())
