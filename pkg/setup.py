import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled kernel is optional: if the build fails the package falls back
# to the pure-NumPy implementation selected at import time.
extensions = [
    Extension(
        "witnesslp._seesaw",
        ["src/witnesslp/_seesaw.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
