from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "affine_fbmc._kernels",
        ["src/affine_fbmc/_kernels.pyx"],
        extra_compile_args=["-O3", "-march=native", "-funroll-loops"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
