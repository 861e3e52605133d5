"""Build script: compiles the optional C kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure here downgrades to a warning
instead of aborting the install.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

HERE = os.path.dirname(os.path.abspath(__file__))
PYX = os.path.join("src", "pballs", "_kernels", "_core.pyx")
C_SRC = os.path.join("src", "pballs", "_kernels", "_core.c")


def make_extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None and os.path.exists(os.path.join(HERE, PYX)):
        return cythonize(
            [Extension("pballs._kernels._core", [PYX])],
            language_level=3,
        )
    if os.path.exists(os.path.join(HERE, C_SRC)):
        return [Extension("pballs._kernels._core", [C_SRC])]
    return []


class OptionalBuildExt(build_ext):
    """Skip the compiled kernels when no toolchain is available."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(
            f"WARNING: compiled kernels not built ({exc}); "
            "falling back to the pure NumPy implementation",
            file=sys.stderr,
        )


setup(
    ext_modules=make_extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
