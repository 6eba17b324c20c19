import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

# The package works without the extension (NumPy fallback is selected at
# import time); building it just makes wigner_grid faster.
extensions = [
    Extension(
        "npwigner._gridkernel",
        ["src/npwigner/_gridkernel.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3", "-march=native", "-ffast-math", "-fopenmp"],
        extra_link_args=["-fopenmp"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
