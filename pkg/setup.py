import os

import numpy as np
from setuptools import Extension, setup

extensions = []
if os.environ.get("SURJUNCT_NO_EXT", "") in ("", "0"):
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "surjunct._kernels",
                ["src/surjunct/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                language="c++",
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
