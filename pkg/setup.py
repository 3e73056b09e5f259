"""Build the optional compiled kernels; the package falls back to numpy without them."""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:  # no build toolchain: pure-Python install
    ext_modules = []
else:
    openmp = [] if os.environ.get("WIGNER_NO_OPENMP") or sys.platform == "darwin" else ["-fopenmp"]
    ext_modules = cythonize(
        [
            Extension(
                "wignerneg._kernels",
                ["src/wignerneg/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"] + openmp,
                extra_link_args=openmp,
            )
        ],
        compiler_directives={"language_level": "3"},
    )


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using numpy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using numpy fallback")


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
