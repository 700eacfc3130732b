"""Build hook for the optional Cython kernels.

The package works without a C compiler: if Cython is missing or the build
fails, the extension is skipped and the pure-Python kernels are used.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print("oddparts: skipping compiled kernels (%s)" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print("oddparts: failed to build %s (%s)" % (ext.name, exc))


def extensions():
    if os.environ.get("ODDPARTS_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "oddparts._ckernels",
        ["src/oddparts/_ckernels.pyx"],
        extra_compile_args=["-O3"],
    )
    try:
        return cythonize([ext], compiler_directives={"language_level": "3"}, quiet=True)
    except Exception as exc:  # noqa: BLE001
        print("oddparts: cythonize failed (%s)" % exc)
        return []


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
