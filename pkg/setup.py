import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled search kernel if possible, fall back to pure Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, broken toolchain, ...
            warnings.warn(f"compiled kernel skipped ({exc}); pure-Python engine will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernel skipped ({exc}); pure-Python engine will be used")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "bhcycle._kernel",
                ["src/bhcycle/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # Cython unavailable
    warnings.warn(f"Cython unavailable ({exc}); pure-Python engine will be used")
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
