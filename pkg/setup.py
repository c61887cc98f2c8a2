import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    """Build the speedup module if possible; the package works without it."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:
            print(f"warning: compiled kernels skipped ({exc}); "
                  "falling back to the pure numpy implementation")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure numpy implementation")


if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "xxzgeom._kernels",
                ["src/xxzgeom/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
else:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
