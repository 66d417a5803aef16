import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is optional: if the build fails (or Cython is
# missing) the package falls back to the NumPy implementation at import.
ext = Extension(
    "multhankel._kernels_c",
    ["src/multhankel/_kernels_c.pyx"],
    include_dirs=[numpy.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    optional=True,
)

setup(ext_modules=cythonize([ext], language_level=3) if cythonize else [])
