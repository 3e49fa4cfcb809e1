"""Build hook for the optional compiled sweep kernel.

The package works without the extension; when the build is impossible
(no Cython, no C toolchain) the install proceeds and the pure-Python
kernel twin is selected at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension, not the install, when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"skipping compiled kernel: {exc}", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping compiled kernel {ext.name}: {exc}", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cleanforge/_kernel/_core.pyx"], language_level=3
    )
except ImportError:
    print("Cython not available; building without the compiled kernel", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
