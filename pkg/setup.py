"""Build script: compiles the optional fast-kernel extension when Cython is present.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any failure here downgrades to a warning instead
of aborting the install. Set STRICHCERT_PURE=1 to skip the compile entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: building the strichcert._kernels extension failed "
            f"({exc!r}); the pure-numpy backend will be used instead",
            file=sys.stderr,
        )


ext_modules = []
if os.environ.get("STRICHCERT_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("strichcert._kernels", ["src/strichcert/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
