import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "filaments._frame_kernel",
                ["src/filaments/_frame_kernel.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )

# The compiled kernel is optional: filaments.bishop falls back to the pure
# numpy implementation when the extension is absent.
setup(ext_modules=ext_modules)
