"""Build script for the optional compiled split-search kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so compilation failures degrade to a warning instead of
aborting the install.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Skip the extension if no working compiler is available."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building the tabgain._kernels._fast extension failed ({exc}); "
            "falling back to the pure-Python kernels",
            file=sys.stderr,
        )


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tabgain._kernels._fast",
                ["src/tabgain/_kernels/_fast.pyx"],
                # fp-contract off: the fallback must match bitwise, and a
                # fused multiply-add would round differently than Python
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
