"""Build hook for the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and runs on the
pure-Python kernels.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("ytiling._kernels", ["src/ytiling/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernels not built ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: {ext.name} not built ({exc}); using pure-Python fallback")


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
