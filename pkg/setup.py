import os

from setuptools import Extension, setup

KERNEL = os.path.join("src", "slcount", "_kernels")

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("slcount._kernels", [KERNEL + ".pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Fall back to a pre-generated C file (sdist), else build the pure wheel;
    # the package selects the pure-Python kernels at import time.
    if os.path.exists(KERNEL + ".c"):
        ext_modules = [Extension("slcount._kernels", [KERNEL + ".c"], extra_compile_args=["-O3"])]

setup(ext_modules=ext_modules)
